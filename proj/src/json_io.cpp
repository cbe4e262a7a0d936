#include "csh/json_io.hpp"

namespace csh {

namespace {

// integers in range are emitted as numbers, larger ones as decimal strings
Json integer_json(const std::string& s) {
    if (s.size() < 18) return Json(std::stoll(s));
    return Json(s);
}

std::string integer_from_json(const Json& j) {
    if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
    if (j.is_string()) return j.get<std::string>();
    throw JsonFormatError("expected an integer");
}

Json coeff_json(Field f, const Coeff& c) {
    if (f != Field::QI) return rational_json(c.re);
    return Json{{"re", rational_json(c.re)}, {"im", rational_json(c.im)}};
}

Coeff coeff_from_json(Field f, const Json& j) {
    if (j.is_object()) return Coeff::make(f, rational_from_json(j.at("re")), rational_from_json(j.at("im")));
    return Coeff::make(f, rational_from_json(j));
}

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw JsonFormatError(std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

Json rational_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (!j.is_string()) throw JsonFormatError("expected an exact fraction string");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const ParseError& e) {
        throw JsonFormatError(std::string("bad fraction: ") + e.what());
    }
}

Field field_from_name(const std::string& s) {
    if (s == field_name(Field::F2)) return Field::F2;
    if (s == field_name(Field::Q)) return Field::Q;
    if (s == field_name(Field::QI)) return Field::QI;
    throw JsonFormatError("unknown field '" + s + "'");
}

Json scalar_json(const NovikovScalar& x) {
    Json terms = Json::array();
    for (const auto& t : x.terms())
        terms.push_back({{"num", integer_json(t.e.num_str())},
                         {"den", integer_json(t.e.den_str())},
                         {"coeff", coeff_json(x.field(), t.c)}});
    Json out{{"terms", terms}};
    if (x.precision()) out["precision"] = rational_json(*x.precision());
    return out;
}

NovikovScalar scalar_from_json(Field f, const Json& j) {
    std::vector<Term> raw;
    for (const auto& t : member(j, "terms")) {
        Rational e = Rational::parse(integer_from_json(member(t, "num")) + "/" + integer_from_json(member(t, "den")));
        raw.push_back({coeff_from_json(f, member(t, "coeff")), e});
    }
    ExtRational prec;
    if (j.contains("precision")) prec = rational_from_json(j.at("precision"));
    return normalize(f, std::move(raw), prec);
}

Json complex_json(const FilteredComplex& c) {
    Json gens = Json::array();
    for (const auto& g : c.generators())
        gens.push_back({{"id", g.id},
                        {"grading", rational_json(g.grading)},
                        {"base_action", rational_json(g.base_action)},
                        {"level", g.level},
                        {"theta", g.theta},
                        {"dual", g.dual}});
    Json entries = Json::array();
    for (std::uint32_t s = 0; s < c.size(); ++s)
        for (const auto& e : c.diff(s))
            entries.push_back({{"source", s}, {"target", e.target}, {"value", scalar_json(e.value)}});
    return Json{{"schema", kSchemaVersion},
                {"field", field_name(c.field())},
                {"lattice", rational_json(c.lattice())},
                {"t_degree", rational_json(c.t_degree())},
                {"generators", gens},
                {"entries", entries}};
}

FilteredComplex complex_from_json(const Json& j) {
    if (member(j, "schema").get<int>() != kSchemaVersion) throw JsonFormatError("unsupported schema version");
    Field f = field_from_name(member(j, "field").get<std::string>());
    FilteredComplex c(f, rational_from_json(member(j, "lattice")), rational_from_json(member(j, "t_degree")));
    for (const auto& g : member(j, "generators")) {
        Generator gen;
        gen.id = member(g, "id").get<std::string>();
        gen.grading = rational_from_json(member(g, "grading"));
        gen.base_action = rational_from_json(member(g, "base_action"));
        gen.level = g.value("level", 0);
        gen.theta = g.value("theta", false);
        gen.dual = g.value("dual", false);
        c.add_generator(std::move(gen));
    }
    for (const auto& e : member(j, "entries")) {
        auto s = member(e, "source").get<std::uint32_t>();
        auto t = member(e, "target").get<std::uint32_t>();
        if (s >= c.size() || t >= c.size()) throw JsonFormatError("entry index out of range");
        c.add_entry(s, t, scalar_from_json(f, member(e, "value")));
    }
    return c;
}

Json graded_json(const std::map<Rational, std::int64_t>& ranks) {
    Json out = Json::object();
    for (const auto& [d, r] : ranks) out[d.str()] = r;
    return out;
}

Json window_report_json(const WindowReport& w) {
    return Json{{"a", rational_json(w.window.a)},
                {"b", rational_json(w.window.b)},
                {"ranks", graded_json(w.ranks)},
                {"total", w.total()}};
}

WindowReport window_report_from_json(const Json& j) {
    WindowReport w;
    w.window = {rational_from_json(member(j, "a")), rational_from_json(member(j, "b"))};
    for (const auto& [k, v] : member(j, "ranks").items()) w.ranks[Rational::parse(k)] = v.get<std::int64_t>();
    return w;
}

Json completed_ranks_json(const CompletedRanks& r) {
    Json steps = Json::array();
    for (const auto& s : r.steps)
        steps.push_back({{"source", {rational_json(s.source.a), rational_json(s.source.b)}},
                         {"target", {rational_json(s.target.a), rational_json(s.target.b)}},
                         {"ranks", graded_json(s.ranks)},
                         {"total", s.total()},
                         {"surjective", s.surjective}});
    Json windows = Json::array();
    for (const auto& w : r.windows) windows.push_back(window_report_json(w));
    return Json{{"graded", graded_json(r.graded)},
                {"total", r.total},
                {"stabilized", r.stabilized},
                {"depth", r.depth},
                {"truncation_level", r.truncation_level},
                {"steps", steps},
                {"windows", windows}};
}

}  // namespace csh
