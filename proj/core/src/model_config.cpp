#include "shiftlab/model_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "shiftlab/beta_shift.hpp"

namespace shiftlab {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else cur.push_back(c);
    }
    out.push_back(cur);
    return out;
}

int to_int(const std::string& s, const std::string& what)
{
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad integer for " + what + ": '" + s + "'");
    }
}

double to_real(const std::string& s, const std::string& what)
{
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad number for " + what + ": '" + s + "'");
    }
}

BigRat to_rational(const std::string& s)
{
    // p/q, integer, or decimal string
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const BigInt p(s.substr(0, slash)), q(s.substr(slash + 1));
        if (q == 0) throw ConfigError("zero denominator in '" + s + "'");
        return BigRat(p, q);
    }
    const auto dot = s.find('.');
    if (dot == std::string::npos) return BigRat(BigInt(s));
    const std::string head = s.substr(0, dot), frac = s.substr(dot + 1);
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const bool neg = !head.empty() && head[0] == '-';
    BigInt whole = head.empty() || head == "-" ? BigInt(0) : BigInt(head);
    BigRat r = BigRat(whole) + (neg ? -1 : 1) * BigRat(BigInt(frac), den);
    return r;
}

}  // namespace

KeyValues parse_key_values(std::istream& in)
{
    KeyValues kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(t.substr(0, eq));
        const std::string val = trim(t.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (kv.count(key)) throw ConfigError("duplicate key '" + key + "'");
        kv[key] = val;
    }
    return kv;
}

KeyValues parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    return parse_key_values(in);
}

ModelPtr model_from_config(const KeyValues& kv)
{
    const auto it = kv.find("kind");
    if (it == kv.end()) throw ConfigError("config needs kind=sft|sofic|beta|sgap");
    const std::string& kind = it->second;

    if (kind == "sft") {
        const auto m = kv.find("matrix");
        if (m == kv.end()) throw ConfigError("sft config needs matrix=");
        std::vector<std::vector<int>> rows;
        for (const std::string& row : split(m->second, ';')) {
            std::vector<int> r;
            for (const std::string& e : split(row, ',')) r.push_back(to_int(trim(e), "matrix entry"));
            rows.push_back(std::move(r));
        }
        return sft_from_matrix(std::move(rows));
    }
    if (kind == "sofic") {
        const int states = to_int(kv.count("states") ? kv.at("states") : "", "states");
        const int alphabet = to_int(kv.count("alphabet") ? kv.at("alphabet") : "", "alphabet");
        const auto e = kv.find("edges");
        if (e == kv.end()) throw ConfigError("sofic config needs edges=");
        std::vector<LabeledEdge> edges;
        for (const std::string& part : split(e->second, ';')) {
            // from:symbol>to
            const auto colon = part.find(':');
            const auto gt = part.find('>');
            if (colon == std::string::npos || gt == std::string::npos || gt < colon)
                throw ConfigError("bad edge '" + part + "' (want from:symbol>to)");
            LabeledEdge le;
            le.from = to_int(trim(part.substr(0, colon)), "edge source");
            le.label = static_cast<Symbol>(to_int(trim(part.substr(colon + 1, gt - colon - 1)), "edge label"));
            le.to = to_int(trim(part.substr(gt + 1)), "edge target");
            edges.push_back(le);
        }
        return std::make_shared<SoficModel>(states, alphabet, std::move(edges));
    }
    if (kind == "beta") {
        if (kv.count("z")) return beta_from_z(Word::from_string(kv.at("z")));
        if (kv.count("beta")) {
            const std::size_t digits = kv.count("digits")
                                           ? static_cast<std::size_t>(to_int(kv.at("digits"), "digits"))
                                           : 24;
            return beta_from_z(beta_z_prefix_exact(to_rational(kv.at("beta")), digits));
        }
        throw ConfigError("beta config needs z= or beta=");
    }
    if (kind == "sgap") {
        const auto s = kv.find("S");
        if (s == kv.end()) throw ConfigError("sgap config needs S=");
        GapSet gs;
        for (const std::string& raw : split(s->second, ',')) {
            const std::string e = trim(raw);
            const auto plus = e.find('+');
            if (plus != std::string::npos) {
                // a+dk arithmetic tail
                std::string tail = e.substr(plus + 1);
                if (tail.empty() || tail.back() != 'k')
                    throw ConfigError("bad gap tail '" + e + "' (want a+dk)");
                tail.pop_back();
                gs.tails.push_back({to_int(e.substr(0, plus), "gap tail start"),
                                    to_int(tail, "gap tail step")});
            } else {
                gs.finite.push_back(to_int(e, "gap"));
            }
        }
        return std::make_shared<SGapModel>(std::move(gs));
    }
    throw ConfigError("unknown model kind '" + kind + "'");
}

std::optional<Potential> potential_from_config(const KeyValues& kv)
{
    const auto it = kv.find("potential.kind");
    if (it == kv.end()) return std::nullopt;
    const std::string& kind = it->second;
    if (kind == "locally_constant") {
        const int window = kv.count("potential.window") ? to_int(kv.at("potential.window"), "window") : 1;
        const auto t = kv.find("potential.table");
        if (t == kv.end()) throw ConfigError("locally constant potential needs potential.table=");
        std::map<Word, double> table;
        for (const std::string& entry : split(t->second, ',')) {
            const auto colon = entry.find(':');
            if (colon == std::string::npos)
                throw ConfigError("bad table entry '" + entry + "' (want word:value)");
            table[Word::from_string(trim(entry.substr(0, colon)))] =
                to_real(trim(entry.substr(colon + 1)), "table value");
        }
        return Potential::locally_constant(window, std::move(table));
    }
    if (kind == "series") {
        if (!kv.count("potential.coeffs") || !kv.count("potential.base"))
            throw ConfigError("series potential needs potential.coeffs= and potential.base=");
        std::vector<double> coeffs, base;
        for (const std::string& c : split(kv.at("potential.coeffs"), ','))
            coeffs.push_back(to_real(trim(c), "coefficient"));
        for (const std::string& b : split(kv.at("potential.base"), ','))
            base.push_back(to_real(trim(b), "base value"));
        const double tail = kv.count("potential.tail") ? to_real(kv.at("potential.tail"), "tail") : 0.0;
        return Potential::holder_series(std::move(coeffs), std::move(base), tail);
    }
    throw ConfigError("unknown potential.kind '" + kind + "'");
}

void reject_unknown_keys(const KeyValues& kv, const std::vector<std::string>& extra_allowed)
{
    static const std::vector<std::string> known = {
        "kind",       "matrix", "states",           "alphabet",         "edges",
        "z",          "beta",   "digits",           "S",                "potential.kind",
        "potential.window",     "potential.table",  "potential.coeffs", "potential.base",
        "potential.tail",
    };
    for (const auto& [k, v] : kv) {
        (void)v;
        if (std::find(known.begin(), known.end(), k) != known.end()) continue;
        if (std::find(extra_allowed.begin(), extra_allowed.end(), k) != extra_allowed.end()) continue;
        throw ConfigError("unknown config key '" + k + "'");
    }
}

}  // namespace shiftlab
