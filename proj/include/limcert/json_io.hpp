#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "limcert/annulus.hpp"

namespace limcert {

// All serialization goes through ordered_json with fixed insertion order and
// canonical "a/b" rationals, so identical inputs give byte-identical files.
using Json = nlohmann::ordered_json;

inline Json to_json(const Rat& q) { return format_rat(q); }

inline Rat rat_from_json(const Json& j) {
    if (!j.is_string()) throw ParseError("expected a rational string");
    return parse_rat(j.get<std::string>());
}

inline Json to_json(const LogValue& v) { return v.str(); }

inline LogValue logvalue_from_json(const Json& j) {
    if (!j.is_string()) throw ParseError("expected a log-value string");
    return parse_logvalue(j.get<std::string>());
}

inline Mode mode_from_string(const std::string& s) {
    if (s == "closed") return Mode::Closed;
    if (s == "dagger") return Mode::Dagger;
    if (s == "open") return Mode::Open;
    throw ParseError("unknown mode '" + s + "'");
}

inline Json to_json(const SpaceSpec& s) {
    Json vars = Json::array();
    for (const auto& v : s.base) vars.push_back(Json{{"e", to_json(v.radius.e)}, {"mode", mode_name(v.mode)}});
    return Json{{"vars", std::move(vars)}};
}

inline SpaceSpec space_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("vars") || !j["vars"].is_array())
        throw ParseError("space spec needs a 'vars' array");
    SpaceSpec s;
    for (const auto& v : j["vars"]) {
        if (!v.contains("e") || !v.contains("mode")) throw ParseError("space variable needs 'e' and 'mode'");
        s.base.push_back({LogRadius(rat_from_json(v["e"])), mode_from_string(v["mode"].get<std::string>())});
    }
    return s;
}

inline Sublinear sublinear_from_string(const std::string& s) {
    if (s == "zero") return Sublinear::Zero;
    if (s == "ceil_sqrt") return Sublinear::CeilSqrt;
    if (s == "ceil_log2") return Sublinear::CeilLog2;
    throw ParseError("unknown sublinear term '" + s + "'");
}

inline Json to_json(const Envelope& e) {
    return Json{{"alpha", to_json(e.alpha)}, {"sublinear", sublinear_name(e.sublinear)}, {"offset", to_json(e.offset)}};
}

inline Envelope envelope_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("alpha") || !j.contains("sublinear") || !j.contains("offset"))
        throw ParseError("envelope needs alpha, sublinear, offset");
    return Envelope{rat_from_json(j["alpha"]), sublinear_from_string(j["sublinear"].get<std::string>()),
                    rat_from_json(j["offset"])};
}

inline Json to_json(const TruncatedSeries& f) {
    Json support = Json::array();
    for (const auto& [key, coeff] : f.support())
        support.push_back(Json{{"i", key.i}, {"j", key.j}, {"coeff", to_json(coeff)}});
    Json tail;
    if (f.tail())
        tail = Json{{"a", to_json(f.tail()->a)}, {"b", to_json(f.tail()->b)}, {"c", to_json(f.tail()->c)}};
    return Json{{"support", std::move(support)}, {"tail", std::move(tail)}};
}

inline TruncatedSeries series_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("support") || !j["support"].is_array())
        throw ParseError("series needs a 'support' array");
    TruncatedSeries f;
    for (const auto& t : j["support"]) {
        if (!t.contains("i") || !t.contains("j") || !t.contains("coeff"))
            throw ParseError("series term needs i, j, coeff");
        f.add_term(t["i"].get<Exp>(), t["j"].get<Exp>(), rat_from_json(t["coeff"]));
    }
    if (j.contains("tail") && !j["tail"].is_null()) {
        const auto& t = j["tail"];
        if (!t.contains("a") || !t.contains("b") || !t.contains("c"))
            throw ParseError("tail bound needs a, b, c");
        f.set_tail(TailBound{rat_from_json(t["a"]), rat_from_json(t["b"]), rat_from_json(t["c"])});
    }
    return f;
}

inline Json to_json(const DiagonalSeries& f) {
    return Json{{"d", f.d}, {"envelope", to_json(f.env)}};
}

inline DiagonalSeries diagonal_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("envelope"))
        throw ParseError("diagonal series needs d and envelope");
    return DiagonalSeries{j["d"].get<Exp>(), envelope_from_json(j["envelope"])};
}

inline Json to_json(const PolyRadius& r) {
    Json vars = Json::array();
    for (const auto& v : r) vars.push_back(Json{{"e", to_json(v.radius.e)}, {"mode", mode_name(v.mode)}});
    return vars;
}

inline Json to_json(const MembershipCertificate& c) {
    Json out{{"verdict", membership_verdict_name(c.verdict)}};
    out["witness"] = c.witness ? to_json(*c.witness) : Json();
    out["witness_slope"] = c.witness_slope ? Json(format_rat(*c.witness_slope)) : Json();
    out["verdict_at_slope"] = c.verdict_at_slope ? Json(limit_verdict_name(*c.verdict_at_slope)) : Json();
    out["note"] = c.note;
    return out;
}

inline Json to_json(const LaurentTruncatedSeries& f) {
    Json support = Json::array();
    for (const auto& [i, coeff] : f.support) support.push_back(Json{{"i", i}, {"coeff", to_json(coeff)}});
    return Json{{"support", std::move(support)},
                {"tail_neg", f.tail_neg ? to_json(*f.tail_neg) : Json()},
                {"tail_pos", f.tail_pos ? to_json(*f.tail_pos) : Json()}};
}

inline LaurentTruncatedSeries laurent_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("support") || !j["support"].is_array())
        throw ParseError("laurent series needs a 'support' array");
    LaurentTruncatedSeries f;
    for (const auto& t : j["support"]) {
        if (!t.contains("i") || !t.contains("coeff")) throw ParseError("laurent term needs i and coeff");
        f.set(t["i"].get<Exp>(), rat_from_json(t["coeff"]));
    }
    if (j.contains("tail_neg") && !j["tail_neg"].is_null()) f.tail_neg = envelope_from_json(j["tail_neg"]);
    if (j.contains("tail_pos") && !j["tail_pos"].is_null()) f.tail_pos = envelope_from_json(j["tail_pos"]);
    return f;
}

inline Json to_json(const SystemConfig& c) {
    Json eta;
    if (c.eta.closed_form()) {
        eta = Json{{"kind", "harmonic"},
                   {"scale", to_json(c.eta.scale())},
                   {"a", to_json(c.eta.linear_a())},
                   {"b", to_json(c.eta.linear_b())}};
    } else {
        Json values = Json::array();
        for (const auto& v : *c.eta.table_values()) values.push_back(to_json(v));
        eta = Json{{"kind", "table"}, {"values", std::move(values)}};
    }
    return Json{{"prime", c.prime.convert_to<long long>()}, {"eta_family", std::move(eta)}};
}

inline SystemConfig config_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("prime") || !j.contains("eta_family"))
        throw ParseError("config needs prime and eta_family");
    SystemConfig c;
    c.prime = Int(j["prime"].get<long long>());
    const auto& eta = j["eta_family"];
    const std::string kind = eta.value("kind", "");
    if (kind == "harmonic") {
        c.eta = EtaFamily::harmonic(rat_from_json(eta["scale"]), rat_from_json(eta["a"]),
                                    rat_from_json(eta["b"]));
    } else if (kind == "table") {
        std::vector<Rat> values;
        for (const auto& v : eta["values"]) values.push_back(rat_from_json(v));
        c.eta = EtaFamily::table(std::move(values));
    } else {
        throw ParseError("unknown eta family kind '" + kind + "'");
    }
    c.validate();
    return c;
}

inline Json to_json(const Check& c) {
    return Json{{"name", c.name}, {"lhs", c.lhs}, {"rel", c.rel}, {"rhs", c.rhs}, {"pass", c.pass}};
}

// Certificate file layout, in fixed field order for diffing:
// config, inputs{n,m,e_lambda,e_eta}, derived{d,e_rho,e_delta,e_eta_prime,
// envelope}, target{l,lhs,rhs}, checks[...]. The checks record the last
// verification run; the verifier always recomputes them from the fields.
inline Json to_json(const ObstructionCertificate& cert, const VerificationReport& rep) {
    Json checks = Json::array();
    for (const auto& c : rep.checks) checks.push_back(to_json(c));
    Json rhs = Json::array();
    for (const auto& s : cert.rhs) rhs.push_back(to_json(s));
    return Json{
        {"config", to_json(cert.config)},
        {"inputs",
         Json{{"n", cert.n}, {"m", cert.m}, {"e_lambda", to_json(cert.e_lambda)}, {"e_eta", to_json(cert.e_eta)}}},
        {"derived", Json{{"d", cert.d},
                         {"e_rho", to_json(cert.e_rho)},
                         {"e_delta", to_json(cert.e_delta)},
                         {"e_eta_prime", to_json(cert.e_eta_prime)},
                         {"envelope", to_json(cert.env)}}},
        {"target", Json{{"l", cert.l}, {"lhs", to_json(cert.lhs)}, {"rhs", std::move(rhs)}}},
        {"checks", std::move(checks)},
    };
}

inline ObstructionCertificate certificate_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("certificate must be an object");
    for (const char* key : {"config", "inputs", "derived", "target"})
        if (!j.contains(key)) throw ParseError(std::string("certificate needs '") + key + "'");

    ObstructionCertificate cert;
    cert.config = config_from_json(j["config"]);
    const auto& in = j["inputs"];
    cert.n = in.at("n").get<long>();
    cert.m = in.at("m").get<long>();
    cert.e_lambda = rat_from_json(in.at("e_lambda"));
    cert.e_eta = rat_from_json(in.at("e_eta"));
    const auto& de = j["derived"];
    cert.d = de.at("d").get<long>();
    cert.e_rho = rat_from_json(de.at("e_rho"));
    cert.e_delta = rat_from_json(de.at("e_delta"));
    cert.e_eta_prime = rat_from_json(de.at("e_eta_prime"));
    cert.env = envelope_from_json(de.at("envelope"));
    const auto& tg = j["target"];
    cert.l = tg.at("l").get<long>();
    cert.lhs = space_from_json(tg.at("lhs"));
    for (const auto& s : tg.at("rhs")) cert.rhs.push_back(space_from_json(s));
    return cert;
}

inline Json to_json(const SolveResult& r) {
    Json levels = Json::array();
    for (const auto& lc : r.levels) levels.push_back(Json{{"level", lc.level}, {"cert", to_json(lc.cert)}});
    Json out{{"status", r.lifted() ? "lift" : "obstruction"}, {"levels", std::move(levels)}};
    out["tail"] = r.tail ? Json{{"from_level", r.tail->from_level},
                                {"rule", r.tail->rule},
                                {"limit_slack", to_json(r.tail->limit_slack)}}
                         : Json();
    out["obstruction"] = r.obstruction
                             ? Json{{"level", r.obstruction->level},
                                    {"slope", to_json(r.obstruction->slope)},
                                    {"verdict_at_slope", limit_verdict_name(r.obstruction->verdict_at_slope)}}
                             : Json();
    return out;
}

// Write-to-temp-then-rename: no partial files on failure.
inline void write_json_atomic(const std::filesystem::path& path, const Json& j) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
        out << j.dump(2) << "\n";
        if (!out.flush()) throw Error("write to '" + tmp.string() + "' failed");
    }
    std::filesystem::rename(tmp, path);
}

inline Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("invalid JSON in '" + path.string() + "': " + e.what());
    }
}

}  // namespace limcert
