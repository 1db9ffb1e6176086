#include "hardytree/treefile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>
#include <vector>

#include "hardytree/errors.hpp"

namespace hardytree {

namespace {

struct Token {
    std::string text;
    std::size_t column = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        if (line[i] == '#') break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r' &&
               line[i] != '#')
            ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

[[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& what) {
    std::ostringstream os;
    os << "line " << line;
    if (column > 0) os << ", column " << column;
    os << ": " << what;
    throw InvalidInput(os.str());
}

double parse_weight(const Token& tok, std::size_t line_no, const char* which) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok.text, &used);
    } catch (const std::exception&) {
        fail(line_no, tok.column, std::string("cannot parse ") + which + " weight '" + tok.text + "'");
    }
    if (used != tok.text.size())
        fail(line_no, tok.column, std::string("trailing characters in ") + which + " weight '" +
                                      tok.text + "'");
    if (!(v > 0.0) || !std::isfinite(v))
        fail(line_no, tok.column, std::string(which) + " weight must be positive, got '" + tok.text + "'");
    return v;
}

} // namespace

ParsedTree parse_tree_file(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;

    bool have_header = false;
    Exponents exponents;
    struct Record {
        VertexId id;
        VertexId parent;  // kNoVertex for root
        double u, w;
        std::size_t line;
    };
    std::vector<Record> records;

    while (std::getline(in, line)) {
        ++line_no;
        const auto toks = tokenize(line);
        if (toks.empty()) continue;

        if (!have_header) {
            if (toks.size() != 2 || toks[0].text.rfind("p=", 0) != 0 ||
                toks[1].text.rfind("q=", 0) != 0)
                fail(line_no, toks[0].column, "expected header 'p=<value> q=<value>'");
            try {
                exponents = Exponents(Exponent::parse(toks[0].text.substr(2)),
                                      Exponent::parse(toks[1].text.substr(2)));
            } catch (const InvalidInput& err) {
                fail(line_no, toks[0].column, err.what());
            }
            have_header = true;
            continue;
        }

        if (toks.size() != 4)
            fail(line_no, toks[0].column, "expected '<id> <parent|-> <u> <w>', got " +
                                              std::to_string(toks.size()) + " fields");
        Record rec;
        rec.line = line_no;
        try {
            std::size_t used = 0;
            const unsigned long id = std::stoul(toks[0].text, &used);
            if (used != toks[0].text.size()) throw std::invalid_argument("");
            rec.id = static_cast<VertexId>(id);
        } catch (const std::exception&) {
            fail(line_no, toks[0].column, "cannot parse vertex id '" + toks[0].text + "'");
        }
        if (toks[1].text == "-") {
            rec.parent = kNoVertex;
        } else {
            try {
                std::size_t used = 0;
                const unsigned long id = std::stoul(toks[1].text, &used);
                if (used != toks[1].text.size()) throw std::invalid_argument("");
                rec.parent = static_cast<VertexId>(id);
            } catch (const std::exception&) {
                fail(line_no, toks[1].column, "cannot parse parent id '" + toks[1].text + "'");
            }
        }
        rec.u = parse_weight(toks[2], line_no, "u");
        rec.w = parse_weight(toks[3], line_no, "w");
        records.push_back(rec);
    }

    if (!have_header) fail(std::max<std::size_t>(line_no, 1), 0, "missing 'p=... q=...' header");
    if (records.empty()) fail(line_no, 0, "no vertex records");

    const std::size_t n = records.size();
    std::vector<char> seen(n, 0);
    std::vector<double> u(n, 0.0), w(n, 0.0);
    std::vector<std::pair<VertexId, VertexId>> edges;
    VertexId root = kNoVertex;
    for (const Record& rec : records) {
        if (rec.id >= n)
            fail(rec.line, 0, "vertex id " + std::to_string(rec.id) + " out of range 0.." +
                                  std::to_string(n - 1) + " (ids must be dense)");
        if (seen[rec.id]) fail(rec.line, 0, "duplicate vertex id " + std::to_string(rec.id));
        seen[rec.id] = 1;
        u[rec.id] = rec.u;
        w[rec.id] = rec.w;
        if (rec.parent == kNoVertex) {
            if (root != kNoVertex) fail(rec.line, 0, "second root line");
            root = rec.id;
        } else {
            if (rec.parent >= n)
                fail(rec.line, 0, "parent id " + std::to_string(rec.parent) +
                                      " references no record (orphan vertex)");
            edges.emplace_back(rec.parent, rec.id);
        }
    }
    if (root == kNoVertex) fail(line_no, 0, "no root line (parent '-') found");

    return {WeightedTree(build_tree(edges, root), std::move(u), std::move(w)), exponents};
}

std::string emit_tree_file(const WeightedTree& wt, const Exponents& e) {
    std::ostringstream os;
    os << "p=" << e.p().str() << " q=" << e.q().str() << "\n";
    char buf[64];
    for (VertexId v = 0; v < wt.size(); ++v) {
        os << v << ' ';
        if (v == wt.tree.root())
            os << '-';
        else
            os << wt.tree.parent(v);
        std::snprintf(buf, sizeof buf, " %.17g %.17g\n", wt.u[v], wt.w[v]);
        os << buf;
    }
    return os.str();
}

std::uint64_t weighted_tree_digest(const WeightedTree& wt) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    mix(wt.size());
    mix(wt.tree.root());
    for (VertexId v = 0; v < wt.size(); ++v) {
        mix(v == wt.tree.root() ? kNoVertex : wt.tree.parent(v));
        std::uint64_t bits;
        static_assert(sizeof bits == sizeof(double));
        std::memcpy(&bits, &wt.u[v], sizeof bits);
        mix(bits);
        std::memcpy(&bits, &wt.w[v], sizeof bits);
        mix(bits);
    }
    return h;
}

} // namespace hardytree
