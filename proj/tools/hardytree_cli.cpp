// Command-line front end: parses tree files, dispatches to the library, and
// prints deterministic human tables or versioned JSON reports.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardytree/asymptotics.hpp"
#include "hardytree/bounds.hpp"
#include "hardytree/cuts.hpp"
#include "hardytree/errors.hpp"
#include "hardytree/hardy1d.hpp"
#include "hardytree/kernel.hpp"
#include "hardytree/norm.hpp"
#include "hardytree/reductions.hpp"
#include "hardytree/tree.hpp"
#include "hardytree/treefile.hpp"

namespace ht = hardytree;
using nlohmann::json;

namespace {

struct Common {
    std::string input;
    std::string p_str;
    std::string q_str;
    std::uint64_t seed = 0;
    double tol = 1e-9;
    int starts = 32;
    std::size_t max_vertices = std::size_t{1} << 20;
    bool json_out = false;
};

void add_common(CLI::App* cmd, Common& c, bool needs_input) {
    auto* in = cmd->add_option("--input", c.input, "Tree file path");
    if (needs_input) in->required();
    cmd->add_option("--p", c.p_str, "Source exponent (decimal, fraction, or 'inf')");
    cmd->add_option("--q", c.q_str, "Target exponent (decimal, fraction, or 'inf')");
    cmd->add_option("--seed", c.seed, "Random seed for multistart solvers");
    cmd->add_option("--tol", c.tol, "Relative tolerance for iterative solvers");
    cmd->add_option("--starts", c.starts, "Random multistart count");
    cmd->add_option("--max-vertices", c.max_vertices, "Instance size guard");
    cmd->add_flag("--json", c.json_out, "Machine-readable JSON report");
}

ht::NormOptions norm_options(const Common& c) {
    ht::NormOptions o;
    o.seed = c.seed;
    o.tol = c.tol;
    o.starts = c.starts;
    return o;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ht::InvalidInput("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string hex_digest(std::uint64_t d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(d));
    return buf;
}

struct LoadedTree {
    ht::WeightedTree tree;
    ht::Exponents exponents;
    std::uint64_t digest = 0;
};

LoadedTree load_tree(const Common& c) {
    ht::ParsedTree parsed = ht::parse_tree_file(read_file(c.input));
    ht::Exponent p = parsed.exponents.p();
    ht::Exponent q = parsed.exponents.q();
    if (!c.p_str.empty()) p = ht::Exponent::parse(c.p_str);
    if (!c.q_str.empty()) q = ht::Exponent::parse(c.q_str);
    if (parsed.tree.size() > c.max_vertices)
        throw ht::SizeCapExceeded("input tree has " + std::to_string(parsed.tree.size()) +
                                  " vertices, over the --max-vertices guard of " +
                                  std::to_string(c.max_vertices));
    const std::uint64_t digest = ht::weighted_tree_digest(parsed.tree);
    return {std::move(parsed.tree), ht::Exponents(p, q), digest};
}

ht::Exponents exponents_from_flags(const Common& c) {
    ht::Exponent p = c.p_str.empty() ? ht::Exponent::from_double(2.0) : ht::Exponent::parse(c.p_str);
    ht::Exponent q = c.q_str.empty() ? ht::Exponent::from_double(2.0) : ht::Exponent::parse(c.q_str);
    return ht::Exponents(p, q);
}

std::vector<double> parse_csv_doubles(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ht::InvalidInput(flag + ": cannot parse '" + item + "' as a number");
        }
    }
    if (out.empty()) throw ht::InvalidInput(flag + ": empty list");
    return out;
}

std::vector<int> parse_csv_ints(const std::string& text, const std::string& flag) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ht::InvalidInput(flag + ": cannot parse '" + item + "' as an integer");
        }
    }
    if (out.empty()) throw ht::InvalidInput(flag + ": empty list");
    return out;
}

// "1|2,3" -> {{1},{2,3}}
std::vector<std::vector<ht::VertexId>> parse_partition(const std::string& text) {
    std::vector<std::vector<ht::VertexId>> blocks;
    std::stringstream ss(text);
    std::string block;
    while (std::getline(ss, block, '|')) {
        std::vector<ht::VertexId> ids;
        for (int v : parse_csv_ints(block, "--partition"))
            ids.push_back(static_cast<ht::VertexId>(v));
        blocks.push_back(std::move(ids));
    }
    if (blocks.empty()) throw ht::InvalidInput("--partition: empty partition");
    return blocks;
}

// --- report assembly ---------------------------------------------------

json new_report(const std::string& command, const Common& c) {
    json r;
    r["schema"] = "hardytree/1";
    r["command"] = command;
    r["options"] = {{"seed", c.seed}, {"tol", c.tol}, {"starts", c.starts}};
    r["quantities"] = json::object();
    r["warnings"] = json::array();
    return r;
}

void describe_input(json& r, const Common& c, const LoadedTree& t) {
    r["input"] = {{"path", c.input},
                  {"vertices", t.tree.size()},
                  {"digest", hex_digest(t.digest)},
                  {"p", t.exponents.p().str()},
                  {"q", t.exponents.q().str()}};
}

void set_quantity(json& r, const std::string& name, double value, const std::string& method) {
    r["quantities"][name] = {{"value", value}, {"method", method}};
}

void warn(json& r, const std::string& message) { r["warnings"].push_back(message); }

void set_norm_estimate(json& r, const std::string& name, const ht::NormEstimate& est) {
    set_quantity(r, name, est.value, ht::name(est.method));
    if (!est.converged)
        warn(r, name + ": solver hit its iteration budget; the reported value is attained by "
                "the witness and remains a valid lower bound");
}

void set_ratio(json& r, const std::string& num, const std::string& den) {
    const json& q = r["quantities"];
    if (!q.contains(num) || !q.contains(den)) return;
    const double a = q[num]["value"].get<double>();
    const double b = q[den]["value"].get<double>();
    if (b > 0.0) set_quantity(r, num + "_over_" + den, a / b, "ratio");
}

json witness_vector(const std::vector<double>& w) {
    json arr = json::array();
    for (double x : w) arr.push_back(x);
    return arr;
}

json cut_to_json(const ht::Cut& cut) {
    return {{"base", cut.base}, {"d_vertices", cut.d_vertices}, {"gamma", cut.gamma}};
}

void render_text(const json& r) {
    std::cout << "command: " << r["command"].get<std::string>() << "\n";
    if (r.contains("input")) {
        const json& in = r["input"];
        std::cout << "input:";
        for (auto it = in.begin(); it != in.end(); ++it) {
            std::cout << ' ' << it.key() << '=';
            if (it->is_string())
                std::cout << it->get<std::string>();
            else
                std::cout << *it;
        }
        std::cout << "\n";
    }
    if (r.contains("parameters")) {
        const json& ps = r["parameters"];
        std::cout << "parameters:";
        for (auto it = ps.begin(); it != ps.end(); ++it) {
            std::cout << ' ' << it.key() << '=';
            if (it->is_string())
                std::cout << it->get<std::string>();
            else
                std::cout << *it;
        }
        std::cout << "\n";
    }
    if (!r["quantities"].empty()) {
        std::cout << "quantities:\n";
        for (auto it = r["quantities"].begin(); it != r["quantities"].end(); ++it) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.9g", (*it)["value"].get<double>());
            std::cout << "  " << it.key() << " = " << buf << "  ("
                      << (*it)["method"].get<std::string>() << ")\n";
        }
    }
    if (r.contains("witnesses")) {
        const json& ws = r["witnesses"];
        for (auto it = ws.begin(); it != ws.end(); ++it) {
            std::cout << "witness " << it.key() << ": ";
            if (it->is_array()) {
                const std::size_t cap = 16;
                for (std::size_t i = 0; i < it->size() && i < cap; ++i) {
                    if (i) std::cout << ' ';
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%.6g", (*it)[i].get<double>());
                    std::cout << buf;
                }
                if (it->size() > cap) std::cout << " ... (" << it->size() << " entries)";
            } else {
                std::cout << *it;
            }
            std::cout << "\n";
        }
    }
    for (const auto& w : r["warnings"]) std::cout << "warning: " << w.get<std::string>() << "\n";
}

void emit(const json& r, const Common& c) {
    if (c.json_out)
        std::cout << r.dump(2) << "\n";
    else
        render_text(r);
}

// --- commands -----------------------------------------------------------

void cmd_norm(const Common& c) {
    LoadedTree t = load_tree(c);
    ht::NormEstimate est = ht::tree_operator_norm(t.tree, t.exponents, norm_options(c));
    json r = new_report("norm", c);
    describe_input(r, c, t);
    set_norm_estimate(r, "norm", est);
    r["witnesses"]["norm"] = witness_vector(est.witness);
    emit(r, c);
}

void cmd_bounds(const Common& c, std::size_t cut_cap) {
    LoadedTree t = load_tree(c);
    json r = new_report("bounds", c);
    describe_input(r, c, t);

    ht::NormEstimate est = ht::tree_operator_norm(t.tree, t.exponents, norm_options(c));
    set_norm_estimate(r, "norm", est);
    r["witnesses"]["norm"] = witness_vector(est.witness);

    ht::VertexBound sp = ht::sup_product(t.tree, t.exponents.q());
    set_quantity(r, "sup_product", sp.value, "vertex_scan");
    r["witnesses"]["sup_product"] = sp.witness;

    ht::VertexBound plb = ht::path_lower_bound(t.tree, t.exponents, t.tree.tree.root());
    set_quantity(r, "path_lower_bound", plb.value, "vertex_scan");
    r["witnesses"]["path_lower_bound"] = plb.witness;

    if (!t.exponents.p_le_q()) {
        warn(r, "cut_supremum omitted: the two-sided cut comparison needs p <= q, got p=" +
                    t.exponents.p().str() + " > q=" + t.exponents.q().str());
    } else {
        try {
            ht::CutBound cs = ht::cut_supremum(t.tree, t.exponents, t.tree.tree.root(), cut_cap);
            set_quantity(r, "cut_supremum", cs.value, "cut_enumeration");
            r["witnesses"]["cut_supremum"] = cut_to_json(cs.witness);
        } catch (const ht::SizeCapExceeded& err) {
            warn(r, std::string("cut_supremum omitted: ") + err.what());
        }
    }

    set_ratio(r, "norm", "sup_product");
    set_ratio(r, "norm", "path_lower_bound");
    set_ratio(r, "norm", "cut_supremum");
    set_ratio(r, "cut_supremum", "sup_product");
    set_ratio(r, "cut_supremum", "path_lower_bound");
    set_ratio(r, "path_lower_bound", "sup_product");
    emit(r, c);
}

void cmd_cuts(const Common& c, ht::VertexId base, bool base_given, std::size_t cut_cap) {
    LoadedTree t = load_tree(c);
    if (!base_given) base = t.tree.tree.root();
    std::vector<ht::Cut> cuts = ht::enumerate_cuts(t.tree.tree, base, cut_cap);
    json r = new_report("cuts", c);
    describe_input(r, c, t);
    r["parameters"] = {{"base", base}};
    set_quantity(r, "count", static_cast<double>(cuts.size()), "enumeration");
    if (c.json_out) {
        json arr = json::array();
        for (const ht::Cut& cut : cuts) arr.push_back(cut_to_json(cut));
        r["cuts"] = std::move(arr);
        emit(r, c);
        return;
    }
    render_text(r);
    const std::size_t cap = 64;
    for (std::size_t i = 0; i < cuts.size() && i < cap; ++i) {
        std::cout << "cut " << i << ": D={";
        for (std::size_t j = 0; j < cuts[i].d_vertices.size(); ++j)
            std::cout << (j ? "," : "") << cuts[i].d_vertices[j];
        std::cout << "} Gamma={";
        for (std::size_t j = 0; j < cuts[i].gamma.size(); ++j)
            std::cout << (j ? "," : "") << cuts[i].gamma[j];
        std::cout << "}\n";
    }
    if (cuts.size() > cap)
        std::cout << "... " << (cuts.size() - cap) << " more (use --json for the full list)\n";
}

void cmd_check_t1(const Common& c, int l0) {
    LoadedTree t = load_tree(c);
    ht::Hypothesis1Report rep = ht::check_theorem1_hypotheses(t.tree, t.exponents.q(), l0);
    json r = new_report("check-t1", c);
    describe_input(r, c, t);
    r["parameters"] = {{"l0", rep.l0}, {"satisfied", rep.satisfied}};
    set_quantity(r, "K", rep.K, "vertex_scan");
    set_quantity(r, "lambda", rep.lambda, "vertex_scan");
    if (!rep.satisfied)
        warn(r, "decay hypothesis fails: lambda >= 1, the sup-product two-sided bound is not "
                "guaranteed at this l0");
    emit(r, c);
}

void cmd_reduce(const Common& c, const std::string& levels_str, ht::VertexId base,
                bool base_given) {
    LoadedTree t = load_tree(c);
    ht::LevelGrouping g;
    g.base = base_given ? base : t.tree.tree.root();
    g.cut_levels = parse_csv_ints(levels_str, "--levels");
    ht::LevelReduction red = ht::reduce_levels(t.tree, g, t.exponents);

    json r = new_report("reduce", c);
    describe_input(r, c, t);
    r["parameters"] = {{"base", g.base}, {"levels", g.cut_levels}};
    ht::NormEstimate before = ht::tree_operator_norm(t.tree, t.exponents, norm_options(c));
    ht::NormEstimate after = ht::tree_operator_norm(red.tree, t.exponents, norm_options(c));
    set_norm_estimate(r, "norm_original", before);
    set_norm_estimate(r, "norm_reduced", after);
    set_ratio(r, "norm_reduced", "norm_original");
    r["source_map"] = red.source;
    r["tree_file"] = ht::emit_tree_file(red.tree, t.exponents);
    if (!c.json_out) {
        render_text(r);
        std::cout << "reduced tree (" << red.tree.size() << " vertices; --json carries the "
                  << "file text and source map)\n";
        return;
    }
    emit(r, c);
}

void cmd_split(const Common& c, ht::VertexId xi, const std::string& partition_str) {
    LoadedTree t = load_tree(c);
    ht::SplitSpec spec;
    spec.xi = xi;
    spec.partition = parse_partition(partition_str);
    ht::SplitResult res = ht::split_vertex(t.tree, spec, t.exponents);

    json r = new_report("split", c);
    describe_input(r, c, t);
    json part = json::array();
    for (const auto& block : spec.partition) part.push_back(block);
    r["parameters"] = {{"xi", spec.xi}, {"partition", part}};
    ht::NormEstimate before = ht::tree_operator_norm(t.tree, t.exponents, norm_options(c));
    ht::ForestNorm after = ht::forest_operator_norm(res.forest, t.exponents, norm_options(c));
    set_norm_estimate(r, "norm_original", before);
    set_quantity(r, "norm_split", after.value,
                 res.forest.size() == 1 ? ht::name(after.components[0].method) : "forest_combine");
    if (!after.converged)
        warn(r, "norm_split: a component solver hit its iteration budget; the value is attained "
                "and remains a valid lower bound");
    set_ratio(r, "norm_split", "norm_original");
    json files = json::array(), maps = json::array();
    for (std::size_t k = 0; k < res.forest.size(); ++k) {
        files.push_back(ht::emit_tree_file(res.forest[k], t.exponents));
        maps.push_back(res.vertex_map[k]);
    }
    r["tree_files"] = std::move(files);
    r["vertex_map"] = std::move(maps);
    if (!c.json_out) {
        render_text(r);
        std::cout << "forest of " << res.forest.size() << " component(s); --json carries the "
                  << "file texts and vertex maps\n";
        return;
    }
    emit(r, c);
}

struct LevelFlags {
    std::string branching;
    std::string u_levels;
    std::string w_levels;
};

std::pair<ht::PsiProfile, ht::LevelWeights> parse_level_flags(const LevelFlags& lf) {
    ht::PsiProfile profile(parse_csv_ints(lf.branching, "--branching"));
    ht::LevelWeights lw;
    lw.u_levels = lf.u_levels.empty()
                      ? std::vector<double>(profile.depth() + 1, 1.0)
                      : parse_csv_doubles(lf.u_levels, "--u-levels");
    lw.w_levels = lf.w_levels.empty()
                      ? std::vector<double>(profile.depth() + 1, 1.0)
                      : parse_csv_doubles(lf.w_levels, "--w-levels");
    const std::size_t want = static_cast<std::size_t>(profile.depth()) + 1;
    if (lw.u_levels.size() != want || lw.w_levels.size() != want)
        throw ht::InvalidInput("level weight lists need exactly depth+1 = " +
                               std::to_string(want) + " entries");
    return {std::move(profile), std::move(lw)};
}

void cmd_chainify(const Common& c, const LevelFlags& lf) {
    auto [profile, lw] = parse_level_flags(lf);
    ht::Exponents e = exponents_from_flags(c);
    auto [u_hat, w_hat] = ht::hat_weights(lw, profile, e);
    ht::ChainWeights cw = ht::chain_weights(lw, profile, e);
    ht::NormEstimate hat_norm =
        ht::hardy_norm_oracle(ht::Sequences{u_hat, w_hat}, e, norm_options(c));

    json r = new_report("chainify", c);
    r["parameters"] = {{"branching", profile.branching},
                       {"p", e.p().str()},
                       {"q", e.q().str()}};
    set_norm_estimate(r, "hat_norm", hat_norm);
    set_quantity(r, "m_star", static_cast<double>(cw.m_star), "branching_product");
    r["witnesses"]["hat_norm"] = witness_vector(hat_norm.witness);
    r["u_hat"] = u_hat;
    r["w_hat"] = w_hat;
    r["u_tilde"] = cw.u_tilde;
    r["w_tilde"] = cw.w_tilde;
    if (!c.json_out) {
        render_text(r);
        auto line = [](const char* label, const std::vector<double>& v) {
            std::cout << label;
            for (double x : v) {
                char buf[64];
                std::snprintf(buf, sizeof buf, " %.9g", x);
                std::cout << buf;
            }
            std::cout << "\n";
        };
        line("u_hat:", u_hat);
        line("w_hat:", w_hat);
        line("u_tilde:", cw.u_tilde);
        line("w_tilde:", cw.w_tilde);
        return;
    }
    emit(r, c);
}

void cmd_regular_gen(const Common& c, const LevelFlags& lf) {
    auto [profile, lw] = parse_level_flags(lf);
    ht::Exponents e = exponents_from_flags(c);
    ht::RootedTree tree = ht::generate_regular_tree(profile, c.max_vertices);
    ht::WeightedTree wt = ht::with_level_weights(tree, lw);
    const std::string text = ht::emit_tree_file(wt, e);
    if (!c.json_out) {
        std::cout << text;  // pipeable tree file
        return;
    }
    json r = new_report("regular-gen", c);
    r["parameters"] = {{"branching", profile.branching}, {"p", e.p().str()}, {"q", e.q().str()}};
    set_quantity(r, "vertices", static_cast<double>(wt.size()), "generation");
    r["tree_file"] = text;
    emit(r, c);
}

void cmd_hardy1d(const Common& c, const std::string& u_str, const std::string& w_str) {
    ht::Sequences s{parse_csv_doubles(u_str, "--u"), parse_csv_doubles(w_str, "--w")};
    ht::Exponents e = exponents_from_flags(c);
    json r = new_report("hardy1d", c);
    r["parameters"] = {{"n", s.u.size()}, {"p", e.p().str()}, {"q", e.q().str()}};

    ht::NormEstimate est = ht::hardy_norm_oracle(s, e, norm_options(c));
    set_norm_estimate(r, "norm", est);
    r["witnesses"]["norm"] = witness_vector(est.witness);
    try {
        const double m = ht::bennett_constant(s, e);
        set_quantity(r, "bennett_constant", m,
                     e.p_le_q() ? "supremum_form" : "series_form");
        set_ratio(r, "norm", "bennett_constant");
    } catch (const ht::InvalidInput& err) {
        warn(r, std::string("bennett_constant omitted: ") + err.what());
    }
    emit(r, c);
}

void cmd_example1(const Common& c, double theta, int s, int j0, const std::string& psi_u_str,
                  const std::string& psi_w_str, const std::string& lambda_str, int tail_cap) {
    ht::Exponents e = exponents_from_flags(c);
    ht::SlowlyVarying psi_u = ht::sv_parse(psi_u_str);
    ht::SlowlyVarying psi_w = ht::sv_parse(psi_w_str);
    ht::SlowlyVarying lambda_star = ht::sv_parse(lambda_str);
    ht::TailBound tb = ht::example1_bound(j0, e.q(), psi_u, psi_w, lambda_star, s, tail_cap);

    json r = new_report("example1", c);
    r["parameters"] = {{"theta", theta},          {"s", s},
                       {"j0", j0},                {"psi_u", psi_u.label},
                       {"psi_w", psi_w.label},    {"lambda_star", lambda_star.label},
                       {"tail_cap", tb.tail_cap}, {"q", e.q().str()},
                       {"diverged", tb.diverged}, {"sup_at", tb.arg}};
    set_quantity(r, "bound", tb.value, "truncated_supremum");
    set_quantity(r, "bound_partial", tb.partial, "truncated_supremum");
    set_quantity(r, "tail_remainder", tb.remainder, "power_law_extrapolation");
    if (tb.diverged)
        warn(r, "series shows no summable decay up to the cap; the bound is reported as "
                "infinite and 'bound_partial' holds the truncated value");
    json levels = json::array();
    for (int j = j0; j < j0 + 8; ++j) {
        auto [uj, wj] = ht::example1_weights(theta, s, psi_u, psi_w, e.q(), j);
        levels.push_back({{"j", j}, {"u", uj}, {"w", wj}});
    }
    r["levels"] = std::move(levels);
    emit(r, c);
}

void cmd_example2(const Common& c, int case_id, ht::Example2Params params,
                  const std::string& rho_u_str, const std::string& rho_w_str,
                  const std::string& tau_str, int tail_cap) {
    ht::Exponents e = exponents_from_flags(c);
    params.rho_u = ht::sv_parse(rho_u_str);
    params.rho_w = ht::sv_parse(rho_w_str);
    params.tau_star = ht::sv_parse(tau_str);
    ht::TailBound tb = ht::example2_bound(case_id, params, e, tail_cap);

    json r = new_report("example2", c);
    r["parameters"] = {{"case", case_id},
                       {"gamma_star", params.gamma_star},
                       {"alpha_u", params.alpha_u},
                       {"alpha_w", params.alpha_w},
                       {"rho_u", params.rho_u.label},
                       {"rho_w", params.rho_w.label},
                       {"tau_star", params.tau_star.label},
                       {"j0", params.j0},
                       {"k0", params.k0},
                       {"tail_cap", tb.tail_cap},
                       {"diverged", tb.diverged},
                       {"sup_at", tb.arg}};
    set_quantity(r, "bound", tb.value, "truncated_supremum");
    set_quantity(r, "bound_partial", tb.partial, "truncated_supremum");
    set_quantity(r, "tail_remainder", tb.remainder, "power_law_extrapolation");
    if (tb.diverged)
        warn(r, "series shows no summable decay up to the cap; the bound is reported as "
                "infinite and 'bound_partial' holds the truncated value");
    emit(r, c);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Operator norms and bounds for weighted summation operators on rooted trees"};
    app.require_subcommand(1);

    Common c;
    std::size_t cut_cap = ht::kDefaultCutCap;

    auto* norm_cmd = app.add_subcommand("norm", "Operator norm of a tree file");
    add_common(norm_cmd, c, true);

    auto* bounds_cmd =
        app.add_subcommand("bounds", "Norm plus certificate bounds and their ratios");
    add_common(bounds_cmd, c, true);
    bounds_cmd->add_option("--cut-cap", cut_cap, "Cut enumeration budget");

    auto* cuts_cmd = app.add_subcommand("cuts", "Enumerate cuts rooted at a base vertex");
    add_common(cuts_cmd, c, true);
    ht::VertexId cuts_base = 0;
    auto* cuts_base_opt = cuts_cmd->add_option("--base", cuts_base, "Base vertex (default root)");
    cuts_cmd->add_option("--cut-cap", cut_cap, "Cut enumeration budget");

    auto* t1_cmd = app.add_subcommand("check-t1", "Branching and decay hypothesis check");
    add_common(t1_cmd, c, true);
    int l0 = 1;
    t1_cmd->add_option("--l0", l0, "Decay step length");

    auto* reduce_cmd = app.add_subcommand("reduce", "Group level bands into a reduced tree");
    add_common(reduce_cmd, c, true);
    std::string levels_str;
    ht::VertexId reduce_base = 0;
    reduce_cmd->add_option("--levels", levels_str, "Cut depths, e.g. 0,2,4")->required();
    auto* reduce_base_opt =
        reduce_cmd->add_option("--base", reduce_base, "Base vertex (default root)");

    auto* split_cmd = app.add_subcommand("split", "Split a vertex along a child partition");
    add_common(split_cmd, c, true);
    ht::VertexId split_xi = 0;
    std::string partition_str;
    split_cmd->add_option("--xi", split_xi, "Vertex to split")->required();
    split_cmd->add_option("--partition", partition_str, "Child blocks, e.g. 1|2,3")->required();

    LevelFlags lf;
    auto add_level_flags = [&lf](CLI::App* cmd) {
        cmd->add_option("--branching", lf.branching, "Branching factors, e.g. 2,2")->required();
        cmd->add_option("--u-levels", lf.u_levels, "Per-level u weights (default all 1)");
        cmd->add_option("--w-levels", lf.w_levels, "Per-level w weights (default all 1)");
    };
    auto* chain_cmd =
        app.add_subcommand("chainify", "Hat and chain weights of a regular-tree problem");
    add_common(chain_cmd, c, false);
    add_level_flags(chain_cmd);

    auto* gen_cmd = app.add_subcommand("regular-gen", "Emit a regular tree as a tree file");
    add_common(gen_cmd, c, false);
    add_level_flags(gen_cmd);

    auto* h1d_cmd = app.add_subcommand("hardy1d", "1D Hardy constant and oracle norm");
    add_common(h1d_cmd, c, false);
    std::string u_str, w_str;
    h1d_cmd->add_option("--u", u_str, "Source weights, e.g. 1,1,0.5")->required();
    h1d_cmd->add_option("--w", w_str, "Target weights")->required();

    auto* ex1_cmd = app.add_subcommand("example1", "Dyadic-level tail bound evaluator");
    add_common(ex1_cmd, c, false);
    double theta = 1.0;
    int ex1_s = 1, ex1_j0 = 1, tail_cap = 4096;
    std::string psi_u_str = "one", psi_w_str = "one", lambda_str = "one";
    ex1_cmd->add_option("--theta", theta, "Weight exponent split");
    ex1_cmd->add_option("--s", ex1_s, "Dyadic stride");
    ex1_cmd->add_option("--j0", ex1_j0, "Start level");
    ex1_cmd->add_option("--psi-u", psi_u_str, "one | log2-2y | inv-log2 | pow:<a>");
    ex1_cmd->add_option("--psi-w", psi_w_str, "one | log2-2y | inv-log2 | pow:<a>");
    ex1_cmd->add_option("--lambda-star", lambda_str, "one | log2-2y | inv-log2 | pow:<a>");
    ex1_cmd->add_option("--tail-cap", tail_cap, "Truncation index");

    auto* ex2_cmd = app.add_subcommand("example2", "Power-weight tail bound evaluator");
    add_common(ex2_cmd, c, false);
    int case_id = 1;
    ht::Example2Params params;
    std::string rho_u_str = "one", rho_w_str = "one", tau_str = "one";
    ex2_cmd->add_option("--case", case_id, "1 (strict decay) or 2 (critical line)");
    ex2_cmd->add_option("--gamma-star", params.gamma_star, "Growth exponent");
    ex2_cmd->add_option("--alpha-u", params.alpha_u, "u power exponent");
    ex2_cmd->add_option("--alpha-w", params.alpha_w, "w power exponent");
    ex2_cmd->add_option("--rho-u", rho_u_str, "one | log2-2y | inv-log2 | pow:<a>");
    ex2_cmd->add_option("--rho-w", rho_w_str, "one | log2-2y | inv-log2 | pow:<a>");
    ex2_cmd->add_option("--tau-star", tau_str, "one | log2-2y | inv-log2 | pow:<a>");
    ex2_cmd->add_option("--j0", params.j0, "Start index (case 1)");
    ex2_cmd->add_option("--k0", params.k0, "Dyadic base offset (case 2)");
    ex2_cmd->add_option("--tail-cap", tail_cap, "Truncation index");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (norm_cmd->parsed()) cmd_norm(c);
        else if (bounds_cmd->parsed()) cmd_bounds(c, cut_cap);
        else if (cuts_cmd->parsed()) cmd_cuts(c, cuts_base, cuts_base_opt->count() > 0, cut_cap);
        else if (t1_cmd->parsed()) cmd_check_t1(c, l0);
        else if (reduce_cmd->parsed())
            cmd_reduce(c, levels_str, reduce_base, reduce_base_opt->count() > 0);
        else if (split_cmd->parsed()) cmd_split(c, split_xi, partition_str);
        else if (chain_cmd->parsed()) cmd_chainify(c, lf);
        else if (gen_cmd->parsed()) cmd_regular_gen(c, lf);
        else if (h1d_cmd->parsed()) cmd_hardy1d(c, u_str, w_str);
        else if (ex1_cmd->parsed())
            cmd_example1(c, theta, ex1_s, ex1_j0, psi_u_str, psi_w_str, lambda_str, tail_cap);
        else if (ex2_cmd->parsed())
            cmd_example2(c, case_id, params, rho_u_str, rho_w_str, tau_str, tail_cap);
    } catch (const ht::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ht::SizeCapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ht::ConvergenceFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
