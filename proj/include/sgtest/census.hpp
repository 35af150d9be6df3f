#ifndef SGTEST_CENSUS_HPP
#define SGTEST_CENSUS_HPP

#include "sgtest/graph.hpp"

namespace sgt {

enum class CensusSource {
  full_exact,     // closed-form census over all C(n,3) triples
  brute_force,    // literal triple enumeration (the oracle)
  node_sample,    // per-node censuses averaged over m sampled nodes
  triple_sample,  // uniform-with-replacement triple draws
};

// Counts and frequencies of the four 3-node shapes plus the edge
// frequency. Counts are reals so that the multiplicity-weighted sampled
// censuses share the type; exact censuses hold genuine integers.
//
// For the sampled sources the directly estimated quantities are the edge
// frequency p_hat and the vee/triangle shares; count_edge and count_empty
// (hence f1, f0) are the complements implied by the per-triple edge totals,
// not independent estimates. `source` records which case applies.
struct TripleCensus {
  double n_triples = 0.0;
  double count_empty = 0.0;
  double count_edge = 0.0;
  double count_vee = 0.0;
  double count_triangle = 0.0;
  double f0 = 0.0, f1 = 0.0, f2 = 0.0, f3 = 0.0;
  double p_hat = 0.0;
  CensusSource source = CensusSource::full_exact;
};

// Number of triangles through each edge, summed once per triangle, via
// sorted-neighbor intersection; plus the degree/incidence identities for
// the remaining shapes. Exact; must match census_brute field-by-field.
// Throws GraphTooSmall for n < 3.
TripleCensus census_full(const Graph& graph);

// O(n^3) enumeration of every triple, classified by edge count. The
// independent oracle census_full is verified against. Intended for
// n up to a few hundred.
TripleCensus census_brute(const Graph& graph);

// C(n,2) and C(n,3) as exact doubles (inputs small enough in practice).
double choose2(double n);
double choose3(double n);

}  // namespace sgt

#endif  // SGTEST_CENSUS_HPP
