#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padiclie/certificate.hpp"
#include "padiclie/cyclic_algebra.hpp"
#include "padiclie/lie_lattice.hpp"
#include "padiclie/local_field.hpp"

namespace padiclie {

struct DriverOptions {
  int prec = kDefaultPrecision;
  std::uint64_t cap = 1000000;  // largest enumeration a driver may start
  // Monic Eisenstein polynomial over Z_p, low to high.
  std::optional<std::vector<std::int64_t>> eisenstein;
  // Monic modulus of O_F over O_K, low to high; each coefficient is given by
  // its integer Z_p coordinates in the basis t^i x^j of O_K.
  std::optional<std::vector<std::vector<std::int64_t>>> unramified;
};

LocalField build_base(std::uint64_t p, int e, int f, const DriverOptions& opts);
UnramifiedExt build_tower(std::uint64_t p, int e, int f, int n, const DriverOptions& opts);

bool theorem_a_hypotheses(std::uint64_t p, int f, int n);
bool theorem_b_hypotheses(std::uint64_t p, int f, int n);

/// Every maximal Z_p-submodule N of p^m sl_1(Delta) has [N, N] = [p^m L, p^m L].
/// When n >= 3 and (p, n) != (3, 3) the O_K-level check also runs and is
/// reported in the notes.
Certificate theorem_a_check(std::uint64_t p, int e, int f, int n, int m, const DriverOptions& opts);
/// The same identity over the maximal O_K-submodules only.
Certificate theorem_a_ok_level_check(std::uint64_t p, int e, int f, int n, int m, const DriverOptions& opts);

/// n = 2, p odd: s-invariants of every maximal Z_p- and O_K-submodule against
/// the four submodule classes of a standard basis.
Certificate sinvariant_table_check(std::uint64_t p, int e, int f, int m, const DriverOptions& opts);

/// Checks the computational premises showing that p^m sl_1(Delta) has no
/// simple virtual endomorphism of index p.
Certificate non_self_similarity_certificate(std::uint64_t p, int e, int f, int n, int m,
                                            const DriverOptions& opts);

/// Closed forms for pi^s O_K, s in [-4, 8], diagonal O_K-lattices, the
/// maximal-submodule dichotomy and the submodule implication chain.
Certificate dvr_lemmas_certificate(std::uint64_t p, int e, int f, const DriverOptions& opts);

/// The residue-field lemmas for kappa_F / kappa_K with |kappa_K| = p^f.
Certificate finite_cyclic_certificate(std::uint64_t p, int f, int n, const DriverOptions& opts);

/// [L, L] = pi L_0 + sum_{0<j<n} L_j with index p^{f(n-1)}.
Certificate commutator_certificate(std::uint64_t p, int e, int f, int n, const DriverOptions& opts);

enum class SimplicityModel { Shift, Inclusion, Metabelian };
std::optional<SimplicityModel> simplicity_model_from_string(const std::string& name);
std::string to_string(SimplicityModel model);

struct SimplicityInstance {
  LieLattice lie;
  VirtualEndomorphism phi;
};
/// Shift: Z_p with phi(p) = 1. Inclusion: Z_p with phi the inclusion of pZ_p.
/// Metabelian: L^d(s) with domain span{x, p y_i}, phi(x) = x, phi(p y_i) = y_i.
SimplicityInstance simplicity_instance(SimplicityModel model, std::uint64_t p, std::size_t d, int s, int prec);

/// Runs the invariant-ideal chain to the given depth and re-checks the verdict:
/// a witness through its three containments, a simple-to-depth verdict by
/// searching every sublattice of index at most p^depth.
Certificate simplicity_certificate(SimplicityModel model, std::uint64_t p, std::size_t d, int s, int depth,
                                   const DriverOptions& opts);
Certificate simplicity_certificate(const SimplicityInstance& inst, int depth, const DriverOptions& opts);

}  // namespace padiclie
