#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csh/complex.hpp"

namespace csh {

enum class ProfileRule {
    Quadratic,  // rho_n = rho (1 - (n+2)^-2)
    RootSlow,   // rho_n = rho (1 - d_n), d_n ~ 3/(sqrt(n+2)+3), strictly decreasing
};

struct RadiusProfile {
    Rational rho;
    ProfileRule rule = ProfileRule::Quadratic;

    static RadiusProfile cochain_side(const Rational& rho) { return {rho, ProfileRule::Quadratic}; }
    static RadiusProfile chain_side(const Rational& rho) { return {rho, ProfileRule::RootSlow}; }
    Rational stage_rho(int n) const;
};

enum class Family { X, Y };

struct OrbitGenerator {
    Family family;
    bool plus;
    int level;
    std::string id() const;
    Rational grading() const;  // value at s = 0
};

// stage complex at level n (orbits of the n-th Hamiltonian)
ComplexPtr build_stage(const RadiusProfile& p, int n);
ComplexPtr build_cochain_model(const RadiusProfile& p, int N);
// dual of the cochain telescope; gradings shifted by +1 so that the map c has degree 0
ComplexPtr build_chain_model(const RadiusProfile& p, int N);

struct ChainMapViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// dual of x0- at stage 0 -> y0- at stage 0, zero elsewhere
ChainMap build_c_map(const ComplexPtr& chain_model, const ComplexPtr& cochain_model);

enum class InvariantKind { DiscCohomology, DiscHomology, Rabinowitz, Cobordism };

std::string kind_name(InvariantKind k);

struct InvariantResult {
    InvariantKind kind;
    Rational inner_rho;
    Rational outer_rho;
    int truncation = 0;
    CompletedRanks ranks;
};

int default_truncation(const Rational& rho, const Rational& b_max);
// first level where the chain-side action of Z passes b_max, plus 4; at least the cochain rule
int chain_side_truncation(const Rational& rho, const Rational& b_max);
int default_truncation(const Rational& inner, const Rational& outer, const Rational& b_max);

InvariantResult compute_invariant(InvariantKind kind, const Rational& inner_rho, const Rational& outer_rho, int N,
                                  const Schedule& schedule, const RankOptions& opt = {});

struct LesNode {
    Rational degree;
    std::string name;
    std::int64_t dim = 0;
    std::int64_t rank_in = 0;
    std::int64_t rank_out = 0;
    bool exact() const { return rank_in + rank_out == dim; }
};

struct LesReport {
    std::map<Rational, std::int64_t> homology_inner;  // chain side, inner boundary
    std::map<Rational, std::int64_t> cohomology_outer;
    std::map<Rational, std::int64_t> cobordism;
    std::vector<LesNode> nodes;
    bool exact() const;
};

struct ExactnessFailure : std::runtime_error {
    ExactnessFailure(const std::string& node, LesReport r)
        : std::runtime_error("long exact sequence fails at " + node), report(std::move(r)) {}
    LesReport report;
};

LesReport les_check(const Rational& inner_rho, const Rational& outer_rho, int N, const Schedule& schedule,
                    const RankOptions& opt = {});

enum class ZLimit { DivergesToInfinity, Bounded, DivergesToMinusInfinity };

std::string zlimit_name(ZLimit z);

struct ZCertificate {
    ZLimit kind;
    std::optional<Rational> limit;
    std::vector<Rational> profile;  // a_1, a_2, ...
};

// actions a_i = (i-1) - i rho_i of the terms of Z under the quadratic rule
ZCertificate z_series_certificate(const Rational& rho, int profile_terms = 12);

}  // namespace csh
