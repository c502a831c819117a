#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "torsion_forge/certificate.hpp"
#include "torsion_forge/hensel.hpp"
#include "torsion_forge/mumford.hpp"
#include "torsion_forge/zeta.hpp"

namespace tforge {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Big integers travel as decimal strings; small structural integers (k,
// levels, genus) as JSON numbers.
inline Json json_integer(const Integer& n) { return n.get_str(); }

inline Integer integer_from_json(const Json& j, const char* what) {
    if (j.is_string()) return parse_integer(j.get<std::string>());
    if (j.is_number_integer()) return Integer(j.get<long>());
    throw Error(std::string("expected integer (number or decimal string) for ") + what);
}

inline Json checks_to_json(const CertificateChecks& c) {
    return Json{{"identity", c.identity},
                {"separable", c.separable},
                {"coprime_ab", c.coprime_ab},
                {"coprime_bu", c.coprime_bu},
                {"deg_u_bound", c.deg_u_bound},
                {"gcd_k_degF", c.gcd_k_degF},
                {"degF_ge_5", c.degF_ge_5}};
}

inline CertificateChecks checks_from_json(const Json& j) {
    CertificateChecks c;
    c.identity = j.at("identity").get<bool>();
    c.separable = j.at("separable").get<bool>();
    c.coprime_ab = j.at("coprime_ab").get<bool>();
    c.coprime_bu = j.at("coprime_bu").get<bool>();
    c.deg_u_bound = j.at("deg_u_bound").get<bool>();
    c.gcd_k_degF = j.at("gcd_k_degF").get<bool>();
    c.degF_ge_5 = j.at("degF_ge_5").get<bool>();
    return c;
}

template <Field K>
Json certificate_to_json(const TorsionCertificate<K>& cert) {
    const K& k = cert.field();
    return Json{{"schema_version", kSchemaVersion},
                {"field", k.name()},
                {"k", cert.k},
                {"N", json_integer(cert.N)},
                {"epsilon", k.format(cert.epsilon)},
                {"b", format_poly(cert.b)},
                {"u", format_poly(cert.u)},
                {"R1", format_poly(cert.R1)},
                {"Rk", format_poly(cert.Rk)},
                {"a", format_poly(cert.a)},
                {"F", format_poly(cert.F)},
                {"genus", cert.genus},
                {"checks", checks_to_json(cert.checks)}};
}

template <Field K>
TorsionCertificate<K> certificate_from_json(const K& k, const Json& j) {
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw Error("unsupported certificate schema version");
    if (j.at("field").get<std::string>() != k.name())
        throw Error("certificate field tag " + j.at("field").get<std::string>() +
                    " does not match " + k.name());
    auto poly = [&](const char* key) {
        return parse_poly(k, j.at(key).template get<std::string>());
    };
    return TorsionCertificate<K>{j.at("k").get<int>(),
                                 integer_from_json(j.at("N"), "N"),
                                 poly("b"),
                                 poly("u"),
                                 poly("R1"),
                                 poly("Rk"),
                                 poly("a"),
                                 poly("F"),
                                 k.parse(j.at("epsilon").get<std::string>()),
                                 j.at("genus").get<long>(),
                                 checks_from_json(j.at("checks"))};
}

using CertificateAny = std::variant<TorsionCertificate<RationalField>,
                                    TorsionCertificate<PrimeField>,
                                    TorsionCertificate<RationalFunctionField>>;

inline CertificateAny certificate_from_json(const Json& j) {
    std::string tag = j.at("field").get<std::string>();
    if (tag == "Q") return certificate_from_json(RationalField{}, j);
    if (tag == "Q(t)") return certificate_from_json(RationalFunctionField{}, j);
    if (tag.rfind("Fp:", 0) == 0)
        return certificate_from_json(PrimeField(parse_integer(tag.substr(3))), j);
    throw Error("unknown field tag: " + tag);
}

template <Field K>
Json lift_to_json(const LiftProblem<K>& pr, const LiftResult<K>& res, bool verified) {
    const K& k = pr.b.field();
    Json j{{"schema_version", kSchemaVersion},
           {"field", k.name()},
           {"k", pr.k},
           {"level", res.level},
           {"b", format_poly(pr.b)},
           {"u", format_poly(pr.u)},
           {"R1", format_poly(pr.R1)},
           {"Rk", format_poly(res.R)},
           {"verified", verified}};
    if (res.trace) {
        Json steps = Json::array();
        for (const auto& s : *res.trace)
            steps.push_back(Json{{"level", s.level},
                                 {"lambda1", format_poly(s.lambda1)},
                                 {"lambda2", format_poly(s.lambda2)},
                                 {"R", format_poly(s.R)}});
        j["trace"] = std::move(steps);
    }
    return j;
}

template <Field K>
std::pair<LiftProblem<K>, LiftResult<K>> lift_from_json(const K& k, const Json& j) {
    auto poly = [&](const char* key) {
        return parse_poly(k, j.at(key).template get<std::string>());
    };
    LiftProblem<K> pr{j.at("k").get<int>(), poly("b"), poly("u"), poly("R1"),
                      j.at("level").get<int>()};
    LiftResult<K> res{poly("Rk"), j.at("level").get<int>(), std::nullopt};
    return {std::move(pr), std::move(res)};
}

inline Json verification_report_to_json(const VerificationReport& r) {
    Json flags = Json::object();
    for (const auto& [name, pass] : r.lines()) flags[name] = pass;
    return Json{{"valid", r.valid}, {"flags", std::move(flags)}};
}

inline VerificationReport verification_report_from_json(const Json& j) {
    VerificationReport r;
    const Json& f = j.at("flags");
    r.checks = CertificateChecks{f.at("identity").get<bool>(),
                                 f.at("separable").get<bool>(),
                                 f.at("coprime_ab").get<bool>(),
                                 f.at("coprime_bu").get<bool>(),
                                 f.at("deg_u_bound").get<bool>(),
                                 f.at("gcd_k_degF").get<bool>(),
                                 f.at("degF_ge_5").get<bool>()};
    r.genus_matches = f.at("genus").get<bool>();
    r.valid = j.at("valid").get<bool>();
    return r;
}

inline Json order_report_to_json(const OrderReport& r) {
    Json j{{"order_divides", r.order_divides},
           {"steps_checked", r.steps_checked},
           {"model", r.model}};
    if (r.order_exact) j["order_exact"] = json_integer(*r.order_exact);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline OrderReport order_report_from_json(const Json& j) {
    OrderReport r;
    r.order_divides = j.at("order_divides").get<bool>();
    r.steps_checked = j.at("steps_checked").get<long>();
    r.model = j.at("model").get<std::string>();
    if (j.contains("order_exact")) r.order_exact = integer_from_json(j.at("order_exact"), "order_exact");
    if (j.contains("note")) r.note = j.at("note").get<std::string>();
    return r;
}

inline Json zeta_report_to_json(const ZetaReport& r) {
    Json counts = Json::array(), coeffs = Json::array();
    for (const auto& c : r.counts) counts.push_back(json_integer(c));
    for (const auto& c : r.l_coeffs) coeffs.push_back(json_integer(c));
    Json j{{"p", json_integer(r.p)},
           {"genus", r.genus},
           {"counts", std::move(counts)},
           {"l_coeffs", std::move(coeffs)},
           {"jacobian_order", json_integer(r.jacobian_order)},
           {"N", json_integer(r.N)},
           {"divisible_by_N", r.divisible_by_N}};
    if (r.t0) j["t0"] = json_integer(*r.t0);
    return j;
}

inline ZetaReport zeta_report_from_json(const Json& j) {
    ZetaReport r;
    r.p = integer_from_json(j.at("p"), "p");
    if (j.contains("t0")) r.t0 = integer_from_json(j.at("t0"), "t0");
    r.genus = j.at("genus").get<unsigned>();
    for (const auto& c : j.at("counts")) r.counts.push_back(integer_from_json(c, "count"));
    for (const auto& c : j.at("l_coeffs")) r.l_coeffs.push_back(integer_from_json(c, "l_coeff"));
    r.jacobian_order = integer_from_json(j.at("jacobian_order"), "jacobian_order");
    r.N = integer_from_json(j.at("N"), "N");
    r.divisible_by_N = j.at("divisible_by_N").get<bool>();
    return r;
}

} // namespace tforge
