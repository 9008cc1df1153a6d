#include "turnpike/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>

#include "turnpike/errors.hpp"

namespace turnpike {
namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& text, const std::string& key) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw PreconditionError("model: '" + key + "' is not a number: '" + t + "'");
    return v;
}

const std::string& require(const KeyValues& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw PreconditionError("model: missing key '" + key + "'");
    return it->second;
}

Interval parse_interval(const KeyValues& kv, const std::string& key) {
    const auto v = parse_list(require(kv, key));
    if (v.size() != 2 || !(v[0] < v[1]))
        throw PreconditionError("model: '" + key + "' needs two increasing values");
    return {v[0], v[1]};
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::string_view rest(text);
    while (true) {
        const auto comma = rest.find(',');
        const std::string item = trim(rest.substr(0, comma));
        if (item.empty()) throw PreconditionError("model: empty list item in '" + text + "'");
        out.push_back(parse_double(item, text));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

KeyValues parse_key_values(std::istream& in) {
    KeyValues kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw PreconditionError("model: line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty() || value.empty())
            throw PreconditionError("model: line " + std::to_string(lineno) + ": empty key or value");
        if (!kv.emplace(key, value).second)
            throw PreconditionError("model: duplicate key '" + key + "'");
    }
    return kv;
}

SlowFastModel model_from_key_values(const KeyValues& kv) {
    static const std::set<std::string> known = {"n",     "lambda",      "delta",      "I",       "I_in",
                                                "I_out", "zeta",        "zeta.beta",  "zeta.coeffs",
                                                "g",     "g.value",     "name"};
    for (const auto& [k, v] : kv)
        if (!known.count(k)) throw PreconditionError("model: unknown key '" + k + "'");

    const double n_real = parse_double(require(kv, "n"), "n");
    if (n_real != static_cast<int>(n_real) || n_real < 1)
        throw PreconditionError("model: n must be a positive integer");
    PolyP p(static_cast<int>(n_real), parse_list(require(kv, "lambda")));

    ZetaFn zeta;
    const std::string& zkind = require(kv, "zeta");
    if (zkind == "ddr-beta") {
        zeta = builtin::zeta_ddr(parse_double(require(kv, "zeta.beta"), "zeta.beta"));
    } else if (zkind == "constant-minus-one") {
        zeta = builtin::zeta_constant_minus_one();
    } else if (zkind == "poly") {
        zeta = builtin::zeta_poly(parse_list(require(kv, "zeta.coeffs")));
    } else {
        throw PreconditionError("model: unknown zeta '" + zkind + "'");
    }

    GFn g;
    const std::string& gkind = require(kv, "g");
    if (gkind == "constant") {
        g = builtin::g_constant(parse_double(require(kv, "g.value"), "g.value"));
    } else if (gkind == "ddr") {
        g = builtin::g_ddr();
    } else {
        throw PreconditionError("model: unknown g '" + gkind + "'");
    }

    const auto name_it = kv.find("name");
    return SlowFastModel(std::move(p), std::move(zeta), std::move(g), parse_double(require(kv, "delta"), "delta"),
                         parse_interval(kv, "I"), parse_interval(kv, "I_in"), parse_interval(kv, "I_out"),
                         name_it == kv.end() ? std::string() : name_it->second);
}

SlowFastModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("model: cannot open '" + path + "'");
    return model_from_key_values(parse_key_values(in));
}

}  // namespace turnpike
