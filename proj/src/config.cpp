#include "superrad/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace superrad {

std::vector<double> GridConfig::taus() const {
    std::vector<double> out(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k)
        out[std::size_t(k)] = t_max * k / double(samples - 1);
    return out;
}

std::string OutputConfig::path(const std::string& stem,
                               const std::string& ext) const {
    std::string p = directory;
    if (!p.empty() && p.back() != '/') p += '/';
    return p + prefix + "_" + stem + "." + ext;
}

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " +
                                msg);
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& tok, int line) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail(line, "bad number '" + tok + "'");
    }
}

int parse_int(const std::string& tok, int line) {
    try {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail(line, "bad integer '" + tok + "'");
    }
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::vector<double> parse_doubles(const std::string& s, int line) {
    std::vector<double> out;
    for (const auto& tok : split_ws(s)) out.push_back(parse_double(tok, line));
    return out;
}

std::vector<int> parse_ints(const std::string& s, int line) {
    std::vector<int> out;
    for (const auto& tok : split_ws(s)) out.push_back(parse_int(tok, line));
    return out;
}

std::vector<Complex> parse_complex_list(const std::string& s, int line) {
    std::vector<Complex> out;
    for (const auto& tok : split_ws(s)) {
        try {
            out.push_back(parse_complex(tok));
        } catch (const std::exception& e) {
            fail(line, e.what());
        }
    }
    return out;
}

/// "(m1,m2,...|R)"; "(|R)" when there are no dark modes.
BasisIndex parse_index(const std::string& tok, int line) {
    if (tok.size() < 4 || tok.front() != '(' || tok.back() != ')')
        fail(line, "bad basis index '" + tok + "', want (m1,...|R)");
    const std::string body = tok.substr(1, tok.size() - 2);
    const std::size_t bar = body.find('|');
    if (bar == std::string::npos)
        fail(line, "bad basis index '" + tok + "', missing |");
    BasisIndex idx;
    std::string deg = trim(body.substr(0, bar));
    if (!deg.empty()) {
        std::istringstream in(deg);
        std::string piece;
        while (std::getline(in, piece, ','))
            idx.degeneracy.push_back(parse_int(trim(piece), line));
    }
    idx.rung = parse_int(trim(body.substr(bar + 1)), line);
    return idx;
}

/// "<amp> (m|R); <amp> (m|R); ..."
std::vector<DickeTerm> parse_terms(const std::string& s, int line) {
    std::vector<DickeTerm> terms;
    std::istringstream in(s);
    std::string piece;
    while (std::getline(in, piece, ';')) {
        piece = trim(piece);
        if (piece.empty()) continue;
        const auto toks = split_ws(piece);
        if (toks.size() != 2)
            fail(line, "bad term '" + piece + "', want '<amp> (m1,...|R)'");
        DickeTerm t;
        try {
            t.amplitude = parse_complex(toks[0]);
        } catch (const std::exception& e) {
            fail(line, e.what());
        }
        t.index = parse_index(toks[1], line);
        terms.push_back(std::move(t));
    }
    if (terms.empty()) fail(line, "empty term list");
    return terms;
}

struct Entry {
    std::string value;
    int line = 0;
};

const std::map<std::string, std::vector<std::string>> kKnownKeys = {
    {"coupling", {"n", "g", "uniform", "kappa", "omega"}},
    {"state", {"family", "alpha", "xi", "occupations", "nbar", "terms"}},
    {"grid", {"t_max", "samples"}},
    {"tolerances", {"truncation", "channel", "leak", "epsilon"}},
    {"output", {"directory", "prefix"}},
};

class Parsed {
public:
    void insert(const std::string& section, const std::string& key,
                const std::string& value, int line) {
        auto [it, fresh] = entries_.try_emplace(section + "." + key,
                                                Entry{value, line});
        if (!fresh)
            fail(line, "duplicate key '" + key + "' (first on line " +
                           std::to_string(it->second.line) + ")");
    }
    const Entry* find(const std::string& section,
                      const std::string& key) const {
        auto it = entries_.find(section + "." + key);
        return it == entries_.end() ? nullptr : &it->second;
    }
    const Entry& require(const std::string& section,
                         const std::string& key) const {
        const Entry* e = find(section, key);
        if (!e)
            throw std::invalid_argument("config: missing required key '" +
                                        key + "' in [" + section + "]");
        return *e;
    }
    bool has_section(const std::string& section) const {
        const std::string prefix = section + ".";
        auto it = entries_.lower_bound(prefix);
        return it != entries_.end() && it->first.compare(0, prefix.size(),
                                                         prefix) == 0;
    }

private:
    std::map<std::string, Entry> entries_;
};

Parsed scan(const std::string& text) {
    Parsed parsed;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw);
        if (s.empty() || s.front() == '#') continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (!kKnownKeys.count(section))
                fail(line, "unknown section [" + section + "]");
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (section.empty()) fail(line, "key before any [section]");
        if (key.empty()) fail(line, "empty key");
        const auto& allowed = kKnownKeys.at(section);
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            fail(line, "unknown key '" + key + "' in [" + section + "]");
        parsed.insert(section, key, value, line);
    }
    return parsed;
}

CouplingConfig build_coupling(const Parsed& p) {
    CouplingConfig cfg;
    const Entry& n = p.require("coupling", "n");
    cfg.n_modes = parse_int(n.value, n.line);
    const Entry& kappa = p.require("coupling", "kappa");
    cfg.kappa = parse_double(kappa.value, kappa.line);
    if (const Entry* omega = p.find("coupling", "omega"))
        cfg.omega = parse_double(omega->value, omega->line);
    const Entry* g = p.find("coupling", "g");
    const Entry* uniform = p.find("coupling", "uniform");
    if (!!g == !!uniform)
        throw std::invalid_argument(
            "config: [coupling] needs exactly one of 'g' or 'uniform'");
    if (uniform) {
        cfg.couplings.assign(std::size_t(std::max(cfg.n_modes, 0)),
                             parse_double(uniform->value, uniform->line));
    } else {
        auto gs = parse_doubles(g->value, g->line);
        if (static_cast<int>(gs.size()) != cfg.n_modes)
            fail(g->line, "expected " + std::to_string(cfg.n_modes) +
                              " couplings, got " + std::to_string(gs.size()));
        cfg.couplings = std::move(gs);
    }
    cfg.validate();
    return cfg;
}

StateSpec build_state(const Parsed& p, const CouplingConfig& cfg) {
    const Entry& fam = p.require("state", "family");
    auto toks = split_ws(fam.value);
    if (toks.empty()) fail(fam.line, "empty family");
    const std::string name = toks[0];
    // trailing "key=value" parameters on the family line
    std::map<std::string, int> params;
    for (std::size_t i = 1; i < toks.size(); ++i) {
        const std::size_t eq = toks[i].find('=');
        if (eq == std::string::npos)
            fail(fam.line, "bad family parameter '" + toks[i] + "'");
        params[toks[i].substr(0, eq)] =
            parse_int(toks[i].substr(eq + 1), fam.line);
    }
    auto reject_params = [&] {
        if (!params.empty())
            fail(fam.line, "family '" + name + "' takes no parameters");
    };

    if (name == "vacuum") {
        reject_params();
        return vacuum_state(cfg.n_modes);
    }
    if (name == "fock") {
        reject_params();
        const Entry& occ = p.require("state", "occupations");
        return StateSpec(MultimodeFock{parse_ints(occ.value, occ.line)});
    }
    if (name == "thermal") {
        reject_params();
        const Entry& nbar = p.require("state", "nbar");
        return StateSpec(ThermalState{parse_doubles(nbar.value, nbar.line)});
    }
    if (name == "squeezed_coherent") {
        reject_params();
        ProductSqueezedCoherent s;
        const Entry& alpha = p.require("state", "alpha");
        s.alpha = parse_complex_list(alpha.value, alpha.line);
        if (const Entry* xi = p.find("state", "xi"))
            s.xi = parse_complex_list(xi->value, xi->line);
        else
            s.xi.assign(s.alpha.size(), Complex(0.0));
        return StateSpec(std::move(s));
    }
    if (name == "dicke") {
        reject_params();
        const Entry& terms = p.require("state", "terms");
        return StateSpec(
            DickeSuperposition{parse_terms(terms.value, terms.line)});
    }
    if (name == "collective_squeezed_vacuum") {
        reject_params();
        const Entry& xi = p.require("state", "xi");
        auto xs = parse_complex_list(xi.value, xi.line);
        if (xs.size() != 1) fail(xi.line, "expected a single xi");
        return StateSpec(CollectiveSqueezedVacuum{xs[0]});
    }
    if (name == "collective_displaced") {
        int mode = cfg.n_modes - 1;  // bright mode unless told otherwise
        if (auto it = params.find("mode"); it != params.end()) {
            mode = it->second;
            params.erase(it);
        }
        reject_params();
        const Entry& alpha = p.require("state", "alpha");
        auto as = parse_complex_list(alpha.value, alpha.line);
        if (as.size() != 1) fail(alpha.line, "expected a single alpha");
        StateSpec base = vacuum_state(cfg.n_modes);
        if (const Entry* terms = p.find("state", "terms"))
            base = StateSpec(
                DickeSuperposition{parse_terms(terms->value, terms->line)});
        CollectiveDisplaced d;
        d.base = std::make_shared<StateSpec>(std::move(base));
        d.mode = mode;
        d.amplitude = as[0];
        return StateSpec(std::move(d));
    }
    if (name == "moon") {
        if (!params.count("M") || !params.count("N"))
            fail(fam.line, "moon needs M=<int> N=<int>");
        const int m = params.at("M"), n = params.at("N");
        params.erase("M");
        params.erase("N");
        reject_params();
        return moon_state(m, n, cfg);
    }
    fail(fam.line, "unknown family '" + name + "'");
}

}  // namespace

Complex parse_complex(const std::string& token) {
    const std::string tok = trim(token);
    if (tok.empty()) throw std::invalid_argument("empty number");
    auto as_double = [](const std::string& s) {
        if (s.empty() || s == "+") return 1.0;
        if (s == "-") return -1.0;
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    };
    try {
        if (tok.back() == 'i' || tok.back() == 'I') {
            const std::string body = tok.substr(0, tok.size() - 1);
            // split before the imaginary part: last +/- not leading and not
            // an exponent sign
            for (std::size_t k = body.size(); k-- > 1;) {
                if ((body[k] == '+' || body[k] == '-') &&
                    body[k - 1] != 'e' && body[k - 1] != 'E') {
                    return {as_double(body.substr(0, k)),
                            as_double(body.substr(k))};
                }
            }
            return {0.0, as_double(body)};
        }
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return {v, 0.0};
    } catch (const std::exception&) {
        throw std::invalid_argument("bad complex number '" + tok + "'");
    }
}

RunConfig parse_config(const std::string& text) {
    const Parsed parsed = scan(text);
    RunConfig cfg;
    cfg.coupling = build_coupling(parsed);
    if (!parsed.has_section("state"))
        throw std::invalid_argument("config: missing [state] section");
    cfg.state = build_state(parsed, cfg.coupling);
    validate_state(cfg.state, cfg.coupling);

    if (const Entry* e = parsed.find("grid", "t_max")) {
        cfg.grid.t_max = parse_double(e->value, e->line);
        if (!(cfg.grid.t_max > 0.0)) fail(e->line, "t_max must be > 0");
    }
    if (const Entry* e = parsed.find("grid", "samples")) {
        cfg.grid.samples = parse_int(e->value, e->line);
        if (cfg.grid.samples < 2) fail(e->line, "samples must be >= 2");
    }
    auto positive = [&](const char* key, double& slot) {
        if (const Entry* e = parsed.find("tolerances", key)) {
            slot = parse_double(e->value, e->line);
            if (!(slot > 0.0))
                fail(e->line, std::string(key) + " must be > 0");
        }
    };
    positive("truncation", cfg.tolerances.truncation);
    positive("channel", cfg.tolerances.channel);
    positive("leak", cfg.tolerances.leak);
    positive("epsilon", cfg.tolerances.epsilon);
    if (const Entry* e = parsed.find("output", "directory"))
        cfg.output.directory = e->value;
    if (const Entry* e = parsed.find("output", "prefix"))
        cfg.output.prefix = e->value;
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read config " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace superrad
