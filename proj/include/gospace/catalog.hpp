#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gospace/geodesic.hpp"
#include "gospace/spaces.hpp"

namespace gospace {

enum class VerdictKind {
  go,                 // go_check returns go_on_samples
  not_go,             // go_check returns not_go with a certificate
  naturally_reductive,
  not_naturally_reductive,
  axis_geodesics,     // axes ∪ pair_grid certifies exactly `count` vectors, all axes
  geodesics_exist,    // find_geodesic_vectors certifies at least one vector
  gordon_solvable,    // random (v_F, v_C) pairs all solvable
  gordon_fails,       // some pair has an exact witness
  two_step,           // construct_two_step + is_two_step_geodesic on samples
  null_k,             // pseudo_geodesic_test: V null with k ≠ 0
  no_null_k,          // integer scan of V finds no k ≠ 0
  sweep_only          // reported by sweeps, nothing asserted
};
std::string to_string(VerdictKind k);

struct ExpectedVerdict {
  VerdictKind kind = VerdictKind::sweep_only;
  std::vector<Rational> lambdas;   // one per block; empty when `diagonal` is used
  std::vector<Rational> diagonal;  // Λ on the m-basis, for K = {e} entries
  std::string expected;            // human readable outcome
  std::string citation;
  std::size_t count = 0;           // axis_geodesics: number of certified vectors
  std::vector<Rational> vector;    // null_k: V
  std::size_t samples = 32;
};

struct CatalogEntry {
  std::string id;  // "wallach(2,2,2)"
  std::string description;
  std::string citation;
  std::vector<ExpectedVerdict> verdicts;
  std::string notes;
  bool stub = false;      // cited but not constructed
  bool compact = true;
  SignatureMode signature = SignatureMode::riemannian;
  std::function<ReductiveSpace<Rational>()> build;
};

/// All entries, stubs included, in a fixed order.
const std::vector<CatalogEntry>& catalog();

/// Entry by identifier; throws InvalidArgument for unknown ids and stubs are returned as is.
const CatalogEntry& find_entry(const std::string& id);

/// Builds a space from "name(args)", e.g. "wallach(2,2,2)", "lie_group(so,5)", "lorentz3(e11)".
ReductiveSpace<Rational> build_space(const std::string& spec);

/// Metric of an expected verdict on the built space.
InvariantMetric<Rational> verdict_metric(const ReductiveSpace<Rational>& space, const ExpectedVerdict& v,
                                         SignatureMode mode);

struct VerdictOutcome {
  bool pass = false;
  std::string observed;
};

struct VerdictRunOptions {
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
};

/// Executes one expected verdict. sweep_only always passes.
VerdictOutcome run_verdict(const CatalogEntry& entry, const ReductiveSpace<Rational>& space, const ExpectedVerdict& v,
                           const VerdictRunOptions& opt = {});

/// First certified geodesic vector, trying axes, pair_grid, random, optimize in turn.
std::optional<GeodesicCertificate<Rational>> first_geodesic_vector(const ReductiveSpace<Rational>& space,
                                                                   const InvariantMetric<Rational>& metric,
                                                                   std::uint64_t seed = 1);

}  // namespace gospace
