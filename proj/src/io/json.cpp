#include "recsum/io/json.hpp"

#include "recsum/core/error.hpp"

namespace recsum {

namespace {

Json expr_to_json(const CoeffExpr& e) {
    switch (e.kind()) {
    case CoeffExpr::Kind::Rational: return e.value().str();
    case CoeffExpr::Kind::Atom: return Json{{"atom", e.name()}};
    case CoeffExpr::Kind::Sum:
    case CoeffExpr::Kind::Product: {
        Json items = Json::array();
        for (const auto& c : e.children())
            items.push_back(expr_to_json(c));
        return Json{{e.kind() == CoeffExpr::Kind::Sum ? "sum" : "product", items}};
    }
    case CoeffExpr::Kind::Quotient:
        return Json{{"quotient", Json::array({expr_to_json(e.children()[0]), expr_to_json(e.children()[1])})}};
    case CoeffExpr::Kind::Power: return Json{{"power", Json::array({expr_to_json(e.children()[0]), e.exponent()})}};
    }
    return "0";
}

CoeffExpr expr_from_json(const Json& j) {
    if (j.is_string()) {
        auto r = Rational::parse(j.get<std::string>());
        if (!r)
            throw Error(ErrorKind::SyntaxError, "'" + j.get<std::string>() + "' is not an exact rational");
        return CoeffExpr::rational(*r);
    }
    if (j.is_number_integer())
        return CoeffExpr::rational(Rational(j.get<long>()));
    if (!j.is_object() || j.size() != 1)
        throw Error(ErrorKind::SyntaxError, "malformed coefficient " + j.dump());
    const auto& [key, value] = *j.items().begin();
    auto list = [&] {
        std::vector<CoeffExpr> out;
        for (const auto& c : value)
            out.push_back(expr_from_json(c));
        return out;
    };
    if (key == "atom")
        return CoeffExpr::atom(value.get<std::string>());
    if (key == "sum")
        return CoeffExpr::sum(list());
    if (key == "product")
        return CoeffExpr::product(list());
    if (key == "quotient" && value.size() == 2)
        return CoeffExpr::quotient(expr_from_json(value[0]), expr_from_json(value[1]));
    if (key == "power" && value.size() == 2)
        return CoeffExpr::power(expr_from_json(value[0]), value[1].get<long>());
    throw Error(ErrorKind::SyntaxError, "malformed coefficient " + j.dump());
}

Json rational_function_json(const RationalFunction& f) {
    return Json{{"num", to_json(f.numerator())}, {"den", to_json(f.denominator())}};
}

RationalFunction rational_function_from_json(const Json& j, const std::string& var) {
    return RationalFunction(poly_from_json(j.at("num"), var), poly_from_json(j.at("den"), var));
}

std::string range_kind(RangeKind k) {
    switch (k) {
    case RangeKind::OneSided: return "one-sided";
    case RangeKind::Finite: return "finite";
    case RangeKind::Bilateral: return "bilateral";
    }
    return "one-sided";
}

} // namespace

Json to_json(const Coeff& c) {
    if (c.is_rational())
        return c.rational().str();
    return expr_to_json(c.to_expr());
}

Coeff coeff_from_json(const Json& j) { return expr_from_json(j).to_coeff(); }

Json to_json(const Poly& p) {
    Json out = Json::array();
    for (const auto& c : p.coeffs())
        out.push_back(to_json(c));
    return out;
}

Poly poly_from_json(const Json& j, const std::string& variable) {
    if (!j.is_array())
        throw Error(ErrorKind::SyntaxError, "polynomial must be a coefficient array");
    std::vector<Coeff> cs;
    for (const auto& c : j)
        cs.push_back(coeff_from_json(c));
    return Poly(variable, std::move(cs));
}

Json to_json(const BoundaryTerm& b) {
    Json out;
    out["kind"] = b.kind == BoundaryKind::Head ? "head" : "tail";
    out["index"] = b.index ? Json(*b.index) : Json(nullptr);
    out["power"] = b.power;
    out["coeff"] = to_json(b.coeff);
    return out;
}

BoundaryTerm boundary_from_json(const Json& j) {
    BoundaryTerm b;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "head" && kind != "tail")
        throw Error(ErrorKind::SyntaxError, "boundary kind must be head or tail");
    b.kind = kind == "head" ? BoundaryKind::Head : BoundaryKind::Tail;
    if (!j.at("index").is_null())
        b.index = j.at("index").get<long>();
    b.power = j.at("power").get<long>();
    b.coeff = coeff_from_json(j.at("coeff"));
    return b;
}

Json to_json(const FunctionalEquation& eq) {
    Json out;
    out["sequence"] = eq.sequence;
    out["order"] = eq.order;
    Json coeffs = Json::array();
    for (int j = 0; j <= eq.order; ++j) {
        Json c = rational_function_json(eq.coeffs[j]);
        coeffs.push_back(Json{{"j", j}, {"num", c["num"]}, {"den", c["den"]}});
    }
    out["coeffs"] = coeffs;
    out["boundary"] = Json::array();
    for (const auto& b : eq.boundary)
        out["boundary"].push_back(to_json(b));
    out["forcing"] = Json::array();
    for (const auto& f : eq.forcing)
        out["forcing"].push_back(Json{{"sequence", f.sequence}, {"multiplier", rational_function_json(f.multiplier)}});
    out["mode"] = std::string(to_string(eq.mode));
    out["n0"] = eq.n0;
    out["known_values"] = Json::array();
    for (const auto& [index, value] : eq.known_values)
        out["known_values"].push_back(Json{{"index", index}, {"value", to_json(value)}});
    out["assumptions"] = eq.assumptions;
    out["text"] = to_string(eq);
    return out;
}

FunctionalEquation equation_from_json(const Json& j) {
    try {
        FunctionalEquation eq;
        eq.sequence = j.at("sequence").get<std::string>();
        eq.order = j.at("order").get<int>();
        if (eq.order < 0)
            throw Error(ErrorKind::SyntaxError, "order must be nonnegative");
        eq.coeffs.assign(eq.order + 1, RationalFunction::constant(Coeff(0), kGfVariable));
        for (const auto& c : j.at("coeffs")) {
            const int k = c.at("j").get<int>();
            if (k < 0 || k > eq.order)
                throw Error(ErrorKind::SyntaxError, "coefficient index out of range");
            eq.coeffs[k] = rational_function_from_json(c, kGfVariable);
        }
        for (const auto& b : j.at("boundary"))
            eq.boundary.push_back(boundary_from_json(b));
        for (const auto& f : j.at("forcing"))
            eq.forcing.push_back({f.at("sequence").get<std::string>(), rational_function_from_json(f.at("multiplier"), kGfVariable)});
        auto mode = parse_mode(j.at("mode").get<std::string>());
        if (!mode)
            throw Error(ErrorKind::SyntaxError, "unknown mode");
        eq.mode = *mode;
        eq.n0 = j.at("n0").get<long>();
        for (const auto& kv : j.at("known_values"))
            eq.known_values.emplace(kv.at("index").get<long>(), coeff_from_json(kv.at("value")));
        eq.assumptions = j.at("assumptions").get<std::vector<std::string>>();
        return eq;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::SyntaxError, std::string("malformed equation JSON: ") + e.what());
    }
}

Json to_json(const Recurrence& r) {
    Json out;
    out["sequence"] = r.sequence;
    out["external_sequences"] = r.external_sequences;
    out["atoms"] = Json::array();
    for (const auto& a : r.atoms)
        out["atoms"].push_back(Json{{"name", a.name}, {"value", a.numeric_hint ? Json(*a.numeric_hint) : Json(nullptr)}});
    out["terms"] = Json::array();
    for (const auto& t : r.terms)
        out["terms"].push_back(Json{{"shift", t.shift}, {"coeff", to_json(t.coeff)}});
    out["forcing"] = r.forcing ? Json{{"sequence", r.forcing->sequence}, {"sign", r.forcing->sign}} : Json(nullptr);
    out["range"] = Json{{"kind", range_kind(r.range.kind)}, {"n0", r.range.n0}};
    out["initial_values"] = Json::array();
    for (const auto& [index, value] : r.initial_values)
        out["initial_values"].push_back(Json{{"index", index}, {"value", to_json(value.to_coeff())}});
    out["aliases"] = Json::array();
    for (const auto& [index, alias] : r.aliases)
        out["aliases"].push_back(Json{{"index", index}, {"target", alias.target}, {"sign", alias.sign}});
    out["order"] = r.order();
    out["max_degree"] = r.max_degree();
    out["text"] = print_recurrence(r);
    return out;
}

Json to_json(const Diagnostics& diagnostics) {
    Json out = Json::array();
    for (const auto& d : diagnostics)
        out.push_back(Json{{"severity", std::string(to_string(d.severity))},
                           {"message", d.message},
                           {"line", d.span.line},
                           {"column", d.span.column},
                           {"begin", d.span.begin},
                           {"end", d.span.end}});
    return out;
}

Json to_json(const ClosedForm& cf) {
    using Kind = ClosedForm::Kind;
    Json out;
    switch (cf.kind()) {
    case Kind::Rational:
        out["kind"] = "rational";
        out["variable"] = cf.rational_function().variable();
        out["num"] = to_json(cf.rational_function().numerator());
        out["den"] = to_json(cf.rational_function().denominator());
        break;
    case Kind::Power:
        out["kind"] = "power";
        out["base"] = to_json(cf.children()[0]);
        out["exponent"] = to_json(cf.exponent());
        break;
    case Kind::Exp:
        out["kind"] = "exp";
        out["argument"] = to_json(cf.children()[0]);
        break;
    case Kind::Sum:
    case Kind::Product:
        out["kind"] = cf.kind() == Kind::Sum ? "sum" : "product";
        out["terms"] = Json::array();
        for (const auto& c : cf.children())
            out["terms"].push_back(to_json(c));
        break;
    case Kind::Integral:
        out["kind"] = "integral";
        out["integrand"] = to_json(cf.children()[0]);
        out["variable"] = cf.integration_variable();
        out["lower"] = to_json(cf.lower_limit());
        out["upper"] = cf.upper_variable();
        break;
    }
    return out;
}

Json to_json(const SeriesExpansion& s) {
    Json out;
    out["start"] = s.start;
    out["order"] = s.order;
    out["exact"] = s.exact;
    out["coefficients"] = Json::array();
    if (s.exact) {
        for (const auto& c : s.exact_coeffs)
            out["coefficients"].push_back(to_json(c));
    } else {
        out["precision_bits"] = s.precision_bits;
        for (const auto& v : s.numeric_coeffs)
            out["coefficients"].push_back(format_real(v, 30));
    }
    return out;
}

Json to_json(const Comparison& c) {
    Json out;
    out["point"] = c.point;
    out["upper_limit"] = c.upper_limit ? Json(*c.upper_limit) : Json(nullptr);
    out["oracle"] = c.oracle;
    out["closed_form"] = c.closed_form;
    out["abs_residual"] = format_real(c.abs_residual, 6);
    out["rel_residual"] = format_real(c.rel_residual, 6);
    out["exact"] = c.exact;
    out["passed"] = c.passed;
    out["truncation"] = c.truncation ? Json(*c.truncation) : Json(nullptr);
    if (!c.error.empty())
        out["error"] = c.error;
    return out;
}

Json to_json(const VerificationReport& report) {
    Json out;
    out["subject"] = report.subject;
    out["comparisons"] = Json::array();
    for (const auto& c : report.comparisons)
        out["comparisons"].push_back(to_json(c));
    out["max_abs_residual"] = format_real(report.max_abs_residual, 6);
    out["max_rel_residual"] = format_real(report.max_rel_residual, 6);
    out["verdict"] = std::string(to_string(report.verdict));
    return out;
}

} // namespace recsum
