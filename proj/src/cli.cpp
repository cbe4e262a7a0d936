#include "csh/cli.hpp"

#include <exception>
#include <sstream>

namespace csh::cli {

std::string command_name(Command c) {
    switch (c) {
        case Command::Disc: return "disc";
        case Command::Annulus: return "annulus";
        case Command::Rabinowitz: return "rabinowitz";
        case Command::Mirror: return "mirror";
        case Command::Crosscheck: return "crosscheck";
        case Command::Selftest: return "selftest";
    }
    return "?";
}

Rational parse_fraction(const std::string& what, const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const ParseError& e) {
        throw UsageError(what + ": '" + text + "' is not an exact fraction (" + e.what() + ")");
    }
}

std::pair<Rational, Rational> parse_pair(const std::string& what, const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw UsageError(what + ": expected a:b, got '" + text + "'");
    return {parse_fraction(what, text.substr(0, colon)), parse_fraction(what, text.substr(colon + 1))};
}

std::vector<std::pair<std::string, std::string>> parse_grid(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    if (text == "none") return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto colon = item.find(':');
        if (colon == std::string::npos) throw UsageError("grid: expected rho1:rho2, got '" + item + "'");
        parse_pair("grid", item);
        out.emplace_back(item.substr(0, colon), item.substr(colon + 1));
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> default_grid() {
    const std::vector<std::string> rs{"1/4", "1/2", "1", "3/2", "2"};
    std::vector<std::pair<std::string, std::string>> g;
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = i; j < rs.size(); ++j) g.emplace_back(rs[i], rs[j]);
    return g;
}

Schedule request_schedule(const RunRequest& r) {
    Rational b0 = parse_fraction("--b0", r.b0);
    Rational step = parse_fraction("--step", r.step);
    Rational a0 = r.a0 ? parse_fraction("--a0", *r.a0) : -b0;
    if (step.sign() <= 0) throw UsageError("--step must be positive");
    int count;
    if (r.count) {
        count = *r.count;
    } else {
        Rational bmax = parse_fraction("--b-max", r.b_max);
        if (bmax < b0) throw UsageError("--b-max is below --b0");
        count = static_cast<int>(((bmax - b0) / step).floor()) + 1;
    }
    if (count < 2) throw UsageError("schedule needs at least two windows");
    try {
        return Schedule::make(a0, b0, step, count);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

namespace {

Rational schedule_reach(const Schedule& s) {
    const Window& w = s.windows.back();
    return std::max(w.b, -w.a);
}

std::string graded_str(const std::map<Rational, std::int64_t>& g) {
    std::string out;
    for (const auto& [d, r] : g) {
        if (!out.empty()) out += ' ';
        out += d.str() + ":" + std::to_string(r);
    }
    return out;
}

RankOptions request_options(const RunRequest& r) {
    if (r.depth < 1) throw UsageError("--depth must be at least 1");
    RankOptions o;
    o.depth = r.depth;
    o.backend = r.backend;
    return o;
}

Json schedule_json(const Schedule& s) {
    Json w = Json::array();
    for (const auto& x : s.windows) w.push_back({rational_json(x.a), rational_json(x.b)});
    return w;
}

ResultRow floer_row(std::vector<std::pair<std::string, std::string>> inputs, const InvariantResult& res) {
    ResultRow row;
    Json in = Json::object();
    for (const auto& [k, v] : inputs) in[k] = v;
    row.cells = std::move(inputs);
    row.cells.emplace_back("N", std::to_string(res.truncation));
    row.cells.emplace_back("ranks", graded_str(res.ranks.graded));
    row.cells.emplace_back("total", std::to_string(res.ranks.total));
    row.cells.emplace_back("windows", std::to_string(res.ranks.windows.size()));
    row.cells.emplace_back("depth", std::to_string(res.ranks.depth));
    row.verdict = "rank " + std::to_string(res.ranks.total);
    row.json = Json{{"inputs", in},
                    {"invariant", kind_name(res.kind)},
                    {"N", res.truncation},
                    {"graded", graded_json(res.ranks.graded)},
                    {"total", res.ranks.total},
                    {"certificate", completed_ranks_json(res.ranks)},
                    {"verdict", row.verdict}};
    return row;
}

Json relation_json(const JacPresentation& p) {
    Json rel = Json::array();
    for (const auto& [e, c] : p.relation) rel.push_back({{"exponent", e}, {"coeff", scalar_json(c)}});
    return rel;
}

ResultRow mirror_row(int m, int k, const Interval& iv, const Prediction& p) {
    ResultRow row;
    row.cells = {{"m", std::to_string(m)},
                 {"k", std::to_string(k)},
                 {"interval", iv.str()},
                 {"rank", std::to_string(p.rank)},
                 {"relation", p.presentation.zero ? "1" : p.presentation.relation_str()}};
    row.verdict = p.rank == 0 ? "Jac = 0" : "Jac rank " + std::to_string(p.rank);
    Json basis = Json::array();
    for (int e : p.presentation.basis) basis.push_back(e);
    row.json = Json{{"inputs", {{"m", m}, {"k", k}, {"interval", iv.str()}}},
                    {"rank", p.rank},
                    {"zero", p.presentation.zero},
                    {"relation", relation_json(p.presentation)},
                    {"relation_text", p.presentation.relation_str()},
                    {"basis", basis},
                    {"critical_valuation", rational_json(p.critical_valuation)},
                    {"contains_critical", p.nonvanishing_by_lagrangian},
                    {"verdict", row.verdict}};
    return row;
}

void check_annulus(const Rational& r1, const Rational& r2) {
    if (r1.sign() < 0) throw UsageError("rho1 must be non-negative");
    if (r2.sign() <= 0) throw UsageError("rho2 must be positive");
    if (r2 < r1) throw UsageError("need rho1 <= rho2, got " + r1.str() + " > " + r2.str());
}

RunResult disc_like(const RunRequest& r) {
    Schedule s = request_schedule(r);
    RankOptions o = request_options(r);
    Rational reach = schedule_reach(s);
    RunResult out;
    if (r.command == Command::Annulus) {
        Rational r1 = parse_fraction("--rho1", r.rho1), r2 = parse_fraction("--rho2", r.rho2);
        check_annulus(r1, r2);
        int N = r.n.value_or(default_truncation(r1, r2, reach));
        auto res = compute_invariant(InvariantKind::Cobordism, r1, r2, N, s, o);
        out.rows.push_back(floer_row({{"rho1", r1.str()}, {"rho2", r2.str()}}, res));
    } else {
        Rational rho = parse_fraction("--rho", r.rho);
        if (rho.sign() <= 0) throw UsageError("rho must be positive");
        InvariantKind kind = InvariantKind::Rabinowitz;
        int N = 0;
        if (r.command == Command::Rabinowitz) {
            N = r.n.value_or(default_truncation(rho, rho, reach));
        } else if (r.side == DiscSide::Cohomology) {
            kind = InvariantKind::DiscCohomology;
            N = r.n.value_or(default_truncation(rho, reach));
        } else {
            kind = InvariantKind::DiscHomology;
            N = r.n.value_or(chain_side_truncation(rho, reach));
        }
        auto res = compute_invariant(kind, 0, rho, N, s, o);
        out.rows.push_back(floer_row({{"rho", rho.str()}}, res));
    }
    return out;
}

RunResult mirror_cmd(const RunRequest& r) {
    std::pair<Rational, Rational> iv;
    if (!r.interval.empty()) {
        if (!r.rho1.empty() || !r.rho2.empty()) throw UsageError("give either --interval or --rho1/--rho2");
        iv = parse_pair("--interval", r.interval);
    } else {
        if (r.rho1.empty() || r.rho2.empty()) throw UsageError("mirror needs --interval a:b or --rho1 and --rho2");
        iv = {parse_fraction("--rho1", r.rho1), parse_fraction("--rho2", r.rho2)};
    }
    check_annulus(iv.first, iv.second);
    Prediction p;
    try {
        p = predict(r.m, r.k, iv.first, iv.second);
    } catch (const OutOfScope& e) {
        throw UsageError(e.what());
    }
    RunResult out;
    out.rows.push_back(mirror_row(r.m, r.k, Interval::cobordism(iv.first, iv.second), p));
    return out;
}

RunResult crosscheck_cmd(const RunRequest& r) {
    auto grid = r.grid ? *r.grid : default_grid();
    Schedule s = request_schedule(r);
    RankOptions o = request_options(r);
    Rational reach = schedule_reach(s);
    std::vector<std::pair<Rational, Rational>> pairs;
    for (const auto& [a, b] : grid) {
        pairs.emplace_back(parse_fraction("grid", a), parse_fraction("grid", b));
        check_annulus(pairs.back().first, pairs.back().second);
    }
    std::vector<ResultRow> rows(pairs.size());
    std::vector<std::exception_ptr> errors(pairs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        try {
            const auto& [r1, r2] = pairs[i];
            int N = r.n.value_or(default_truncation(r1, r2, reach));
            auto floer = compute_invariant(InvariantKind::Cobordism, r1, r2, N, s, o);
            auto mirror = predict(1, 1, r1, r2);
            ResultRow row;
            bool agree = floer.ranks.total == mirror.rank;
            row.cells = {{"rho1", r1.str()},
                         {"rho2", r2.str()},
                         {"N", std::to_string(N)},
                         {"floer", std::to_string(floer.ranks.total)},
                         {"mirror", std::to_string(mirror.rank)}};
            row.ok = agree;
            row.verdict = agree ? "agree" : "disagree";
            row.json = Json{{"inputs", {{"rho1", r1.str()}, {"rho2", r2.str()}}},
                            {"N", N},
                            {"floer_rank", floer.ranks.total},
                            {"floer_graded", graded_json(floer.ranks.graded)},
                            {"mirror_rank", mirror.rank},
                            {"relation_text", mirror.presentation.relation_str()},
                            {"agree", agree},
                            {"verdict", row.verdict}};
            rows[i] = std::move(row);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    RunResult out;
    out.rows = std::move(rows);
    return out;
}

ResultRow check_row(const std::string& name, bool ok, const std::string& detail) {
    ResultRow row;
    row.cells = {{"check", name}, {"detail", detail}};
    row.ok = ok;
    row.verdict = ok ? "pass" : "FAIL";
    row.json = Json{{"check", name}, {"detail", detail}, {"pass", ok}};
    return row;
}

RunResult selftest_cmd(const RunRequest& r) {
    RunResult out;
    {
        Field f = Field::Q;
        auto u = add(NovikovScalar::one(f), NovikovScalar::t_power(f, 1));
        auto p = mul(u, invert(u, 10));
        auto diff = sub(p, NovikovScalar::one(f));
        auto v = valuation(diff);
        bool ok = !v.value || *v.value >= Rational(10);
        out.rows.push_back(check_row("novikov inverse", ok, "(1+T)(1+T)^-1 - 1 = " + diff.str()));
    }
    {
        auto c = build_cochain_model(RadiusProfile::cochain_side(Rational(1, 2)), 12);
        auto rep = check_invariants(*c);
        out.rows.push_back(check_row("telescope invariants", rep.ok(), rep.ok() ? "d^2 = 0, degree, action" : rep.detail));
    }
    {
        auto st = build_stage(RadiusProfile::cochain_side(1), 3);
        auto cn = cone(identity_map(st));
        auto w = homology_window(*cn, -5, 5);
        out.rows.push_back(check_row("cone(id) acyclic", w.total() == 0, "window (-5, 5] total " + std::to_string(w.total())));
    }
    {
        auto z = z_series_certificate(1);
        bool ok = z.kind == ZLimit::Bounded && z.limit && *z.limit == Rational(-1);
        out.rows.push_back(check_row("Z certificate at rho = 1", ok,
                                     zlimit_name(z.kind) + (z.limit ? " " + z.limit->str() : "")));
    }
    {
        auto seed = tropical_seed(1, 1);
        bool ok = false;
        std::string detail = "no seed";
        if (seed) {
            auto cp = critical_point_lift(1, 1, *seed, 10);
            ok = true;
            for (const auto& v : cp.residuals) ok = ok && !v.value && !v.indeterminate;
            detail = "z = " + cp.coords[0].str();
        }
        out.rows.push_back(check_row("critical point (1,1)", ok, detail));
    }
    {
        Schedule s = request_schedule(r);
        RankOptions o = request_options(r);
        Rational reach = schedule_reach(s);
        for (auto [rho, expect] : {std::pair{Rational(1, 2), 0}, std::pair{Rational(1), 1}}) {
            auto res = compute_invariant(InvariantKind::DiscCohomology, 0, rho, default_truncation(rho, reach), s, o);
            out.rows.push_back(check_row("disc cohomology rho = " + rho.str(), res.ranks.total == expect,
                                         "rank " + std::to_string(res.ranks.total)));
        }
    }
    {
        auto p = predict(1, 1, Rational(1, 2), 2);
        out.rows.push_back(check_row("mirror (1,1) on [1/2, 2]", p.rank == 1, "rank " + std::to_string(p.rank)));
    }
    return out;
}

Json request_json(const RunRequest& r) {
    Json j = Json::object();
    j["command"] = command_name(r.command);
    switch (r.command) {
        case Command::Disc:
            j["rho"] = r.rho;
            j["side"] = r.side == DiscSide::Cohomology ? "cohomology" : "homology";
            break;
        case Command::Rabinowitz: j["rho"] = r.rho; break;
        case Command::Annulus:
            j["rho1"] = r.rho1;
            j["rho2"] = r.rho2;
            break;
        case Command::Mirror:
            j["m"] = r.m;
            j["k"] = r.k;
            if (!r.interval.empty()) j["interval"] = r.interval;
            else {
                j["rho1"] = r.rho1;
                j["rho2"] = r.rho2;
            }
            break;
        case Command::Crosscheck: {
            Json g = Json::array();
            for (const auto& [a, b] : r.grid ? *r.grid : default_grid()) g.push_back({a, b});
            j["grid"] = g;
            break;
        }
        case Command::Selftest: break;
    }
    if (r.command != Command::Mirror) {
        j["schedule"] = schedule_json(request_schedule(r));
        j["depth"] = r.depth;
        if (r.n) j["n"] = *r.n;
    }
    return j;
}

}  // namespace

RunResult run(const RunRequest& r) {
    RunResult out;
    try {
        switch (r.command) {
            case Command::Disc:
            case Command::Annulus:
            case Command::Rabinowitz: out = disc_like(r); break;
            case Command::Mirror: out = mirror_cmd(r); break;
            case Command::Crosscheck: out = crosscheck_cmd(r); break;
            case Command::Selftest: out = selftest_cmd(r); break;
        }
    } catch (const UsageError& e) {
        return RunResult{{}, 1, e.what(), {}};
    } catch (const std::invalid_argument& e) {
        return RunResult{{}, 1, e.what(), {}};
    } catch (const NoStabilization& e) {
        RunResult f{{}, 2, e.what(), {}};
        f.document = Json{{"schema", kSchemaVersion}, {"error", e.what()}, {"certificate", completed_ranks_json(e.certificate)}};
        return f;
    } catch (const Inconsistency& e) {
        return RunResult{{}, 3, e.what(), {}};
    }
    bool pass = true;
    Json rows = Json::array();
    for (const auto& row : out.rows) {
        pass = pass && row.ok;
        rows.push_back(row.json);
    }
    out.document = Json{{"schema", kSchemaVersion}, {"request", request_json(r)}, {"rows", rows}, {"pass", pass}};
    if (!pass) {
        out.exit_code = 3;
        std::string bad;
        for (const auto& row : out.rows)
            if (!row.ok) {
                std::string cells;
                for (const auto& [k, v] : row.cells) cells += (cells.empty() ? "" : ", ") + k + "=" + v;
                bad += "\n  " + cells + ": " + row.verdict;
            }
        out.error = command_name(r.command) + " found inconsistent rows:" + bad;
    }
    return out;
}

std::string render_table(const RunResult& res) {
    std::ostringstream os;
    if (res.rows.empty()) {
        os << "(no rows)\n";
    } else {
        std::vector<std::string> head;
        for (const auto& [k, v] : res.rows.front().cells) head.push_back(k);
        head.push_back("verdict");
        std::vector<std::vector<std::string>> body;
        for (const auto& row : res.rows) {
            std::vector<std::string> line;
            for (const auto& [k, v] : row.cells) line.push_back(v);
            line.push_back(row.verdict);
            body.push_back(std::move(line));
        }
        std::vector<std::size_t> width(head.size());
        auto measure = [&](const std::vector<std::string>& line) {
            for (std::size_t i = 0; i < line.size() && i < width.size(); ++i)
                width[i] = std::max(width[i], line[i].size());
        };
        measure(head);
        for (const auto& l : body) measure(l);
        auto emit = [&](const std::vector<std::string>& line) {
            std::string s;
            for (std::size_t i = 0; i < line.size(); ++i) {
                s += line[i];
                if (i + 1 < line.size()) s += std::string(width[i] - line[i].size() + 2, ' ');
            }
            os << s << '\n';
        };
        emit(head);
        for (const auto& l : body) emit(l);
    }
    std::size_t bad = 0;
    for (const auto& row : res.rows) bad += !row.ok;
    if (res.document.contains("request") && res.document["request"]["command"] == "crosscheck")
        os << (bad == 0 ? "pass" : "FAIL") << ": " << res.rows.size() << " rows, " << bad << " disagreements\n";
    return os.str();
}

std::string render_json(const RunResult& res) { return res.document.dump(2) + "\n"; }

}  // namespace csh::cli
