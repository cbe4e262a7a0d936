#include "csh/complex.hpp"

#include <algorithm>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "csh/linalg.hpp"

namespace csh {

namespace {

void require_lattice(const FilteredComplex& c) {
    for (std::uint32_t g = 0; g < c.size(); ++g)
        for (auto& [h, v] : c.diff(g))
            for (auto& t : v.terms())
                if (!(t.e / c.lattice()).is_integer())
                    throw LatticeError("exponent " + t.e.str() + " of " + c.gen(g).id + " is off the lattice " +
                                       c.lattice().str());
}

// lattice points s with a < s + base <= b
std::pair<std::int64_t, std::int64_t> lattice_range(const Rational& base, const Rational& a, const Rational& b,
                                                    const Rational& step) {
    std::int64_t lo = ((a - base) / step).floor() + 1;
    std::int64_t hi = ((b - base) / step).floor();
    return {lo, hi};
}

// basis of one degree in a window, restricted to a selection
class DegreeBasis {
public:
    DegreeBasis(const FilteredComplex& c, const Selection* sel, const Rational& d, const Window& w)
        : c_(c), t0_(c.t_degree().is_zero()) {
        if (!t0_) row_.assign(c.size(), -1);
        for (std::uint32_t g = 0; g < c.size(); ++g) {
            if (sel && !(*sel)[g]) continue;
            const Generator& gen = c.gen(g);
            if (!t0_) {
                Rational q = (d - gen.grading) / c.t_degree();
                if (!(q / c.lattice()).is_integer()) continue;
                Rational act = q + gen.base_action;
                if (!(w.a < act && act <= w.b)) continue;
                row_[g] = static_cast<std::int32_t>(elems_.size());
                elems_.push_back({g, q});
            } else {
                if (gen.grading != d) continue;
                auto [lo, hi] = lattice_range(gen.base_action, w.a, w.b, c.lattice());
                for (std::int64_t j = lo; j <= hi; ++j) {
                    map_.emplace(pack(g, j), static_cast<std::int32_t>(elems_.size()));
                    elems_.push_back({g, c.lattice() * Rational(j)});
                }
            }
        }
    }

    std::size_t size() const { return elems_.size(); }
    const BasisElement& operator[](std::size_t i) const { return elems_[i]; }

    std::int32_t lookup(std::uint32_t g, const Rational& s) const {
        if (!t0_) {
            std::int32_t r = row_[g];
            if (r < 0 || elems_[r].s != s) return -1;
            return r;
        }
        Rational j = s / c_.lattice();
        if (!j.is_integer()) return -1;
        auto it = map_.find(pack(g, j.num()));
        return it == map_.end() ? -1 : it->second;
    }

private:
    static std::uint64_t pack(std::uint32_t g, std::int64_t j) {
        return (std::uint64_t(g) << 32) ^ static_cast<std::uint32_t>(j);
    }
    const FilteredComplex& c_;
    bool t0_;
    std::vector<BasisElement> elems_;
    std::vector<std::int32_t> row_;
    std::unordered_map<std::uint64_t, std::int32_t> map_;
};

// columns of a sparse map (differential or chain map) between two bases
struct Matrix {
    std::size_t nrows = 0;
    std::vector<FieldColumn> cols;
};

void append_image(FieldColumn& col, const std::vector<Entry>& entries, const Rational& s, const DegreeBasis& tgt,
                  std::uint32_t offset, Field f, bool negate) {
    for (auto& [h, v] : entries)
        for (auto& t : v.terms()) {
            std::int32_t r = tgt.lookup(h, s + t.e);
            if (r < 0) continue;
            col.push_back({offset + static_cast<std::uint32_t>(r), negate ? coeff_neg(f, t.c) : t.c});
        }
}

Matrix diff_matrix(const FilteredComplex& c, const DegreeBasis& src, const DegreeBasis& tgt) {
    Matrix m;
    m.nrows = tgt.size();
    m.cols.resize(src.size());
    for (std::size_t i = 0; i < src.size(); ++i)
        append_image(m.cols[i], c.diff(src[i].gen), src[i].s, tgt, 0, c.field(), false);
    return m;
}

std::int64_t matrix_rank(Field f, Matrix m, Backend backend) {
    if (m.cols.empty() || m.nrows == 0) return 0;
    if (f != Field::F2) return field_rank_dense(f, m.cols, m.nrows);
    std::vector<BitColumn> cols(m.cols.size());
    for (std::size_t i = 0; i < m.cols.size(); ++i) {
        auto& out = cols[i];
        for (auto& [r, c] : m.cols[i])
            if (!c.is_zero()) out.push_back(r);
        std::sort(out.begin(), out.end());
        // repeated rows cancel in characteristic 2
        BitColumn dedup;
        for (std::size_t k = 0; k < out.size();) {
            std::size_t e = k;
            while (e < out.size() && out[e] == out[k]) ++e;
            if ((e - k) % 2) dedup.push_back(out[k]);
            k = e;
        }
        out.swap(dedup);
    }
    if (backend == Backend::Reference) return gf2_rank_dense(cols, m.nrows);
    return gf2_rank_sparse(std::move(cols), m.nrows);
}

std::int64_t diff_rank(const FilteredComplex& c, const DegreeBasis& src, const DegreeBasis& tgt, Backend b) {
    return matrix_rank(c.field(), diff_matrix(c, src, tgt), b);
}

}  // namespace

std::vector<BasisElement> window_basis(const FilteredComplex& c, const Rational& a, const Rational& b) {
    if (!(a < b)) throw std::invalid_argument("window_basis: need a < b");
    if (c.lattice().sign() <= 0) throw LatticeError("lattice step must be positive");
    require_lattice(c);
    std::vector<BasisElement> out;
    for (std::uint32_t g = 0; g < c.size(); ++g) {
        auto [lo, hi] = lattice_range(c.gen(g).base_action, a, b, c.lattice());
        for (std::int64_t j = lo; j <= hi; ++j) out.push_back({g, c.lattice() * Rational(j)});
    }
    return out;
}

std::int64_t WindowReport::total() const {
    std::int64_t t = 0;
    for (auto& [d, r] : ranks) t += r;
    return t;
}

WindowReport homology_window(const FilteredComplex& c, const Rational& a, const Rational& b, Backend backend) {
    WindowReport rep{{a, b}, {}};
    std::set<Rational> degrees;
    for (auto& e : window_basis(c, a, b)) degrees.insert(c.gen(e.gen).grading + e.s * c.t_degree());
    std::vector<Rational> ds(degrees.begin(), degrees.end());
    std::vector<std::int64_t> ranks(ds.size(), 0);
    Window w{a, b};
    auto work = [&](std::size_t i) {
        DegreeBasis lo(c, nullptr, ds[i] - 1, w), mid(c, nullptr, ds[i], w), hi(c, nullptr, ds[i] + 1, w);
        Backend inner = backend == Backend::Parallel ? Backend::Serial : backend;
        ranks[i] = static_cast<std::int64_t>(mid.size()) - diff_rank(c, mid, hi, inner) - diff_rank(c, lo, mid, inner);
    };
    if (backend == Backend::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t i = 0; i < ds.size(); ++i) work(i);
    } else {
        for (std::size_t i = 0; i < ds.size(); ++i) work(i);
    }
    for (std::size_t i = 0; i < ds.size(); ++i)
        if (ranks[i] != 0) rep.ranks[ds[i]] = ranks[i];
    return rep;
}

Selection select_all(const FilteredComplex& c) { return Selection(c.size(), 1); }

Selection truncation_source(const FilteredComplex& c, int level) {
    Selection in(c.size(), 0);
    for (std::uint32_t g = 0; g < c.size(); ++g) in[g] = c.gen(g).dual || c.gen(g).level <= level;
    // drop generators whose boundary leaves the set, until stable
    std::vector<std::vector<std::uint32_t>> preds(c.size());
    for (std::uint32_t g = 0; g < c.size(); ++g)
        for (auto& e : c.diff(g)) preds[e.target].push_back(g);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t g = 0; g < c.size(); ++g)
        if (!in[g]) stack.push_back(g);
    while (!stack.empty()) {
        std::uint32_t h = stack.back();
        stack.pop_back();
        for (auto g : preds[h])
            if (in[g]) {
                in[g] = 0;
                stack.push_back(g);
            }
    }
    return in;
}

Selection truncation_target(const FilteredComplex& c, int level) {
    Selection in(c.size(), 0);
    for (std::uint32_t g = 0; g < c.size(); ++g) in[g] = !c.gen(g).dual || c.gen(g).level <= level;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t g = 0; g < c.size(); ++g)
        if (!in[g]) stack.push_back(g);
    while (!stack.empty()) {
        std::uint32_t g = stack.back();
        stack.pop_back();
        for (auto& e : c.diff(g))
            if (in[e.target]) {
                in[e.target] = 0;
                stack.push_back(e.target);
            }
    }
    return in;
}

InducedRank induced_rank(const Side& src, const Side& tgt, const ChainMap* f, const Rational& d, Backend backend) {
    const FilteredComplex& C1 = *src.complex;
    const FilteredComplex& C2 = *tgt.complex;
    if (!f && &C1 != &C2) throw ShapeError("induced_rank: identity needs a single complex");
    Field fld = C1.field();
    DegreeBasis s_lo(C1, src.selection, d - 1, src.window), s_mid(C1, src.selection, d, src.window),
        s_hi(C1, src.selection, d + 1, src.window);
    DegreeBasis t_lo(C2, tgt.selection, d - 1, tgt.window), t_mid(C2, tgt.selection, d, tgt.window),
        t_hi(C2, tgt.selection, d + 1, tgt.window);

    std::int64_t rA = diff_rank(C1, s_mid, s_hi, backend);
    std::int64_t rS = diff_rank(C1, s_lo, s_mid, backend);
    std::int64_t rB = diff_rank(C2, t_lo, t_mid, backend);
    std::int64_t rT = diff_rank(C2, t_mid, t_hi, backend);

    // [[A, 0], [F, B]] : C1_d + C2_{d-1} -> C1_{d+1} + C2_d
    Matrix m;
    const auto off = static_cast<std::uint32_t>(s_hi.size());
    m.nrows = s_hi.size() + t_mid.size();
    m.cols.resize(s_mid.size() + t_lo.size());
    for (std::size_t i = 0; i < s_mid.size(); ++i) {
        auto& col = m.cols[i];
        const BasisElement& e = s_mid[i];
        append_image(col, C1.diff(e.gen), e.s, s_hi, 0, fld, false);
        if (f) {
            append_image(col, f->entries[e.gen], e.s, t_mid, off, fld, false);
        } else {
            std::int32_t r = t_mid.lookup(e.gen, e.s);
            if (r >= 0) col.push_back({off + static_cast<std::uint32_t>(r), Coeff::make(fld, 1)});
        }
    }
    for (std::size_t i = 0; i < t_lo.size(); ++i)
        append_image(m.cols[s_mid.size() + i], C2.diff(t_lo[i].gen), t_lo[i].s, t_mid, off, fld, false);
    std::int64_t rM = matrix_rank(fld, std::move(m), backend);

    InducedRank out;
    out.rank = rM - rA - rB;
    out.source_dim = static_cast<std::int64_t>(s_mid.size()) - rA - rS;
    out.target_dim = static_cast<std::int64_t>(t_mid.size()) - rT - rB;
    return out;
}

std::vector<Rational> representative_degrees(const FilteredComplex& c) {
    std::set<Rational> reps;
    const Rational& t = c.t_degree();
    for (auto& g : c.generators()) {
        if (t.is_zero()) {
            reps.insert(g.grading);
            continue;
        }
        Rational q = g.grading / t;
        reps.insert(g.grading - t * Rational(q.floor()));
    }
    return {reps.begin(), reps.end()};
}

Schedule Schedule::symmetric(const Rational& b0, const Rational& step, int count) {
    return make(-b0, b0, step, count);
}

Schedule Schedule::make(const Rational& a0, const Rational& b0, const Rational& step, int count) {
    Schedule s;
    for (int j = 0; j < count; ++j) s.windows.push_back({a0 - step * Rational(j), b0 + step * Rational(j)});
    s.validate();
    return s;
}

void Schedule::validate() const {
    for (std::size_t j = 0; j < windows.size(); ++j) {
        if (!(windows[j].a < windows[j].b)) throw std::invalid_argument("schedule: empty window");
        if (j > 0 && !(windows[j].a < windows[j - 1].a && windows[j - 1].b < windows[j].b))
            throw std::invalid_argument("schedule must widen strictly on both ends");
    }
}

std::int64_t RankStep::total() const {
    std::int64_t t = 0;
    for (auto& [d, r] : ranks) t += r;
    return t;
}

namespace {

CompletedRanks run_estimates(const FilteredComplex& C1, const FilteredComplex& C2, const ChainMap* f,
                             const Schedule& schedule, const RankOptions& opt) {
    schedule.validate();
    CompletedRanks out;
    out.depth = opt.depth;
    out.truncation_level = opt.truncation_level;
    Selection all1 = select_all(C1), all2 = select_all(C2);
    Selection S1 = opt.truncation_level >= 0 ? truncation_source(C1, opt.truncation_level) : all1;
    Selection S2 = opt.truncation_level >= 0 ? truncation_target(C2, opt.truncation_level) : all2;

    std::set<Rational> degset;
    for (auto& d : representative_degrees(C1)) degset.insert(d);
    for (auto& d : representative_degrees(C2)) degset.insert(d);
    std::vector<Rational> degs(degset.begin(), degset.end());

    const auto& W = schedule.windows;
    const std::size_t steps = W.size() > 0 ? W.size() - 1 : 0;
    const std::size_t tasks = steps * degs.size();
    std::vector<InducedRank> res(tasks);
    // window homology of the full source side at each schedule window
    std::vector<std::int64_t> wh(W.size() * degs.size(), 0);
    Backend inner = opt.backend == Backend::Parallel ? Backend::Serial : opt.backend;

    auto step_task = [&](std::size_t t) {
        std::size_t j = t / degs.size(), k = t % degs.size();
        Side src{&C1, &S1, {W[j].a, W[j + 1].b}};
        Side tgt{&C2, &S2, {W[j + 1].a, W[j].b}};
        res[t] = induced_rank(src, tgt, f, degs[k], inner);
    };
    auto window_task = [&](std::size_t t) {
        std::size_t j = t / degs.size(), k = t % degs.size();
        Side s{&C1, &all1, W[j]};
        wh[t] = induced_rank(s, s, nullptr, degs[k], inner).source_dim;
    };
    const std::size_t total = tasks + wh.size();
    if (opt.backend == Backend::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::size_t t = 0; t < total; ++t) t < tasks ? step_task(t) : window_task(t - tasks);
    } else {
        for (std::size_t t = 0; t < total; ++t) t < tasks ? step_task(t) : window_task(t - tasks);
    }

    for (std::size_t j = 0; j < W.size(); ++j) {
        WindowReport r{W[j], {}};
        for (std::size_t k = 0; k < degs.size(); ++k) r.ranks[degs[k]] = wh[j * degs.size() + k];
        out.windows.push_back(r);
    }
    for (std::size_t j = 0; j < steps; ++j) {
        RankStep st{{W[j].a, W[j + 1].b}, {W[j + 1].a, W[j].b}, {}, true};
        for (std::size_t k = 0; k < degs.size(); ++k) {
            const InducedRank& r = res[j * degs.size() + k];
            st.ranks[degs[k]] = r.rank;
            if (r.rank != r.target_dim) st.surjective = false;
        }
        out.steps.push_back(st);
    }
    const int depth = std::max(1, opt.depth);
    if (static_cast<int>(out.steps.size()) >= depth) {
        bool same = true;
        const auto& last = out.steps.back().ranks;
        for (std::size_t j = out.steps.size() - depth; j < out.steps.size(); ++j) same = same && out.steps[j].ranks == last;
        if (same) {
            out.stabilized = true;
            out.graded = last;
            for (auto& [d, r] : last) out.total += r;
        }
    }
    if (!out.stabilized) throw NoStabilization(out);
    return out;
}

}  // namespace

CompletedRanks completed_ranks(const FilteredComplex& c, const Schedule& schedule, const RankOptions& opt) {
    require_lattice(c);
    return run_estimates(c, c, nullptr, schedule, opt);
}

CompletedRanks completed_map_ranks(const ChainMap& f, const Schedule& schedule, const RankOptions& opt) {
    require_lattice(*f.source);
    require_lattice(*f.target);
    return run_estimates(*f.source, *f.target, &f, schedule, opt);
}

}  // namespace csh
