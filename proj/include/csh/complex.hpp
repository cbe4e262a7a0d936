#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "csh/novikov.hpp"

namespace csh {

struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LatticeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Generator {
    std::string id;
    Rational grading;
    Rational base_action;
    int level = 0;
    bool theta = false;
    bool dual = false;
};

struct Entry {
    std::uint32_t target;
    NovikovScalar value;
};

using SparseColumns = std::vector<std::vector<Entry>>;

class FilteredComplex {
public:
    explicit FilteredComplex(Field f = Field::F2, Rational lattice = 1, Rational t_degree = 2)
        : field_(f), lattice_(lattice), t_degree_(t_degree) {}

    Field field() const { return field_; }
    // exponents of differential entries live on lattice * Z
    const Rational& lattice() const { return lattice_; }
    // grading carried by T
    const Rational& t_degree() const { return t_degree_; }

    std::uint32_t add_generator(Generator g);
    // adds v to the (source, target) entry
    void add_entry(std::uint32_t source, std::uint32_t target, const NovikovScalar& v);

    std::size_t size() const { return gens_.size(); }
    const Generator& gen(std::uint32_t i) const { return gens_[i]; }
    const std::vector<Generator>& generators() const { return gens_; }
    const std::vector<Entry>& diff(std::uint32_t i) const { return diff_[i]; }
    const SparseColumns& differential() const { return diff_; }
    std::int64_t find(const std::string& id, bool theta = false) const;
    std::uint32_t at(const std::string& id, bool theta = false) const;

    std::size_t entry_count() const;

private:
    Field field_;
    Rational lattice_;
    Rational t_degree_;
    std::vector<Generator> gens_;
    SparseColumns diff_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

using ComplexPtr = std::shared_ptr<const FilteredComplex>;

struct ChainMap {
    ComplexPtr source;
    ComplexPtr target;
    SparseColumns entries;  // indexed by source generator

    ChainMap() = default;
    ChainMap(ComplexPtr s, ComplexPtr t) : source(std::move(s)), target(std::move(t)), entries(source->size()) {}
    void add(std::uint32_t s, std::uint32_t t, const NovikovScalar& v);
};

ChainMap identity_map(const ComplexPtr& c);
ChainMap zero_map(const ComplexPtr& s, const ComplexPtr& t);

struct InvariantReport {
    bool d_squared_zero = true;
    bool degree_ok = true;
    bool action_ok = true;
    bool lattice_ok = true;
    std::string detail;
    bool ok() const { return d_squared_zero && degree_ok && action_ok && lattice_ok; }
};

InvariantReport check_invariants(const FilteredComplex& c);
void assert_invariants(const FilteredComplex& c);

struct ChainMapReport {
    bool commutes = true;
    bool degree_ok = true;
    bool action_ok = true;
    std::string detail;
    bool ok() const { return commutes && degree_ok && action_ok; }
};

ChainMapReport check_chain_map(const ChainMap& f);

// target plus source with grading lowered by one; d = [[d_t, f], [0, -d_s]]
ComplexPtr cone(const ChainMap& f);
// continuations.size() is stages.size() - 1, or stages.size() with an empty last map
// (the last stage then maps to zero); theta copies exist exactly for stages with a map
ComplexPtr telescope(const std::vector<ComplexPtr>& stages, const std::vector<ChainMap>& continuations);
// gradings -g + shift, actions negated, differential transposed, dual flag toggled
ComplexPtr dualize(const FilteredComplex& c, const Rational& grading_shift = 0);

// ---- windows ----

struct Window {
    Rational a;
    Rational b;
};

struct BasisElement {
    std::uint32_t gen;
    Rational s;
};

std::vector<BasisElement> window_basis(const FilteredComplex& c, const Rational& a, const Rational& b);

struct WindowReport {
    Window window;
    std::map<Rational, std::int64_t> ranks;
    std::int64_t total() const;
};

enum class Backend { Reference, Serial, Parallel };

WindowReport homology_window(const FilteredComplex& c, const Rational& a, const Rational& b,
                             Backend backend = Backend::Parallel);

using Selection = std::vector<char>;

Selection select_all(const FilteredComplex& c);
// largest subcomplex inside {dual} u {non-dual with level <= L}
Selection truncation_source(const FilteredComplex& c, int level);
// largest quotient complex inside {non-dual} u {dual with level <= L}
Selection truncation_target(const FilteredComplex& c, int level);

struct Side {
    const FilteredComplex* complex;
    const Selection* selection;
    Window window;
};

struct InducedRank {
    std::int64_t rank = 0;
    std::int64_t source_dim = 0;  // dim H of the source side
    std::int64_t target_dim = 0;  // dim H of the target side
};

// rank of H_d(source) -> H_d(target) induced by f, or by the identity on shared generators when f is null
InducedRank induced_rank(const Side& src, const Side& tgt, const ChainMap* f, const Rational& degree,
                         Backend backend = Backend::Serial);

std::vector<Rational> representative_degrees(const FilteredComplex& c);

struct Schedule {
    std::vector<Window> windows;
    static Schedule symmetric(const Rational& b0, const Rational& step, int count);
    static Schedule make(const Rational& a0, const Rational& b0, const Rational& step, int count);
    void validate() const;
};

struct RankStep {
    Window source;
    Window target;
    std::map<Rational, std::int64_t> ranks;
    bool surjective = true;
    std::int64_t total() const;
};

struct CompletedRanks {
    std::map<Rational, std::int64_t> graded;
    std::int64_t total = 0;
    std::vector<WindowReport> windows;
    std::vector<RankStep> steps;
    int depth = 3;
    int truncation_level = -1;
    bool stabilized = false;
};

struct NoStabilization : std::runtime_error {
    explicit NoStabilization(CompletedRanks partial)
        : std::runtime_error("ranks did not stabilize along the schedule"), certificate(std::move(partial)) {}
    CompletedRanks certificate;
};

struct RankOptions {
    int depth = 3;
    int truncation_level = -1;  // < 0: no level truncation
    Backend backend = Backend::Parallel;
};

// estimates from windows j -> j+1: H(S1 in (a_j, b_{j+1}]) -> H(S2 in (a_{j+1}, b_j])
CompletedRanks completed_ranks(const FilteredComplex& c, const Schedule& schedule, const RankOptions& opt = {});
CompletedRanks completed_map_ranks(const ChainMap& f, const Schedule& schedule, const RankOptions& opt = {});

// ---- primitive search ----

struct ChainTerm {
    std::uint32_t gen;
    Rational s;
    Coeff c;
    Rational action;
};

struct PrimitiveResult {
    std::vector<ChainTerm> primitive;
    std::vector<ChainTerm> residual;
    bool stuck = false;
    std::vector<Rational> action_profile() const;
};

struct Stuck : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// greedy: cancel the lowest-action residual term with the highest-action unused generator
PrimitiveResult primitive_search(const FilteredComplex& c, const std::vector<ChainTerm>& cycle,
                                 const Rational& action_bound, std::size_t max_steps = 100000);

}  // namespace csh
