#include <catch2/catch_amalgamated.hpp>

#include "cgl/analysis.hpp"
#include "util.hpp"

using namespace cgl;
using namespace testutil;

TEST_CASE("bfs diameter of cycles") {
  REQUIRE(bfs_diameter(circulant(8, {1, 7})) == 4u);
  REQUIRE(bfs_diameter(circulant(5, {1, 4})) == 2u);
  REQUIRE(bfs_diameter(circulant(5, {1, 2, 3, 4})) == 1u);
  REQUIRE_FALSE(bfs_diameter(circulant(6, {2, 4})).has_value());
}

TEST_CASE("bfs diameter follows directed edges") {
  // one-way cycle still reaches everything
  REQUIRE(bfs_diameter(circulant(5, {1})) == 4u);
}

TEST_CASE("diameter relation within a variant family") {
  GroupPtr z16 = cyclic(16);
  GroupMap neg = inversion_map(z16);
  ConnectionMultiset s = set_of(z16, {1, 15});
  VariantGraph g1 = build_variant(z16, s, Variant::Cayley);
  VariantGraph g3 = build_variant(z16, s, Variant::TwistedCayley, &neg);
  DiameterRelationReport r = diameter_relation_check(g1, g3, 1, 3);
  REQUIRE(r.pass);
  REQUIRE(r.diam_i <= 2 * r.diam_j);
  REQUIRE(r.diam_j <= 2 * r.diam_i);
}

TEST_CASE("diameter relation rejects directed or disconnected input") {
  REQUIRE_THROWS_AS(diameter_relation_check(circulant(5, {1}), circulant(5, {1, 4}), 1, 2),
                    MathError);
  REQUIRE_THROWS_AS(
      diameter_relation_check(circulant(6, {2, 4}), circulant(6, {1, 5}), 1, 2), MathError);
}

TEST_CASE("abelian diameter lower bound values") {
  // (|S|/4e) |G|^(1/|S|) - |S|/2 at |S$|=2, |G|=64: 8/(2e) - 1
  double b = abelian_diameter_lower_bound(64, 2);
  REQUIRE(b == Catch::Approx(8.0 / (2.0 * std::exp(1.0)) - 1.0).margin(1e-12));
  REQUIRE(abelian_diameter_lower_bound(64, 2) == Catch::Approx(0.4715).margin(1e-4));
}

TEST_CASE("abelian diameter check on sum graphs") {
  GroupPtr z64 = cyclic(64);
  VariantGraph g = build_variant(z64, set_of(z64, {1, 63}), Variant::CayleySum);
  AbelianDiameterReport r = abelian_diameter_check(g, z64, 2);
  REQUIRE(r.pass);
  REQUIRE(r.bound == Catch::Approx(0.4715).margin(1e-4));
  REQUIRE(r.diameter >= 1);
}

TEST_CASE("abelian diameter check rejects plain graphs and nonabelian groups") {
  GroupPtr z8 = cyclic(8);
  VariantGraph plain = build_variant(z8, set_of(z8, {1, 7}), Variant::Cayley);
  REQUIRE_THROWS_AS(abelian_diameter_check(plain, z8, 2), UsageError);
  GroupPtr s4 = parse_group("sym:4");
  ConnectionMultiset s = class_connection(s4, parse_element(s4, "(1,2)"));
  VariantGraph sum = build_variant(s4, s, Variant::CayleySum);
  REQUIRE_THROWS_AS(abelian_diameter_check(sum, s4, 6), UsageError);
}

TEST_CASE("loop counts by trace and by algebra") {
  GroupPtr z5 = cyclic(5);
  ConnectionMultiset s = set_of(z5, {1, 4});
  VariantGraph plain = build_variant(z5, s, Variant::Cayley);
  VariantGraph sum = build_variant(z5, s, Variant::CayleySum);
  REQUIRE(loop_count_trace(plain) == 0);
  REQUIRE(loop_vertex_count(plain) == 0);
  REQUIRE(loop_count_trace(sum) == 2);
  REQUIRE(loop_vertex_count(sum) == 2);
  REQUIRE(loop_count_algebraic(Variant::Cayley, z5, s, nullptr) == 0);
  REQUIRE(loop_count_algebraic(Variant::CayleySum, z5, s, nullptr) == 2);
}

TEST_CASE("algebraic loop counts match traces across variants") {
  GroupPtr z12 = cyclic(12);
  GroupMap neg = inversion_map(z12);
  ConnectionMultiset s = set_of(z12, {0, 3, 9, 6});
  for (Variant v : {Variant::Cayley, Variant::CayleySum, Variant::TwistedCayley,
                    Variant::TwistedCayleySum}) {
    const GroupMap* sp =
        (v == Variant::TwistedCayley || v == Variant::TwistedCayleySum) ? &neg : nullptr;
    VariantGraph g = build_variant(z12, s, v, sp);
    REQUIRE(loop_count_algebraic(v, z12, s, sp) == loop_count_trace(g));
  }
}

TEST_CASE("closed walk vertex counts") {
  // triangle-free square lattice piece: no closed 3-walks without loops
  REQUIRE(closed_walk_vertex_count(circulant(8, {1, 7}), 3) == 0);
  REQUIRE(closed_walk_vertex_count(circulant(8, {1, 7}), 2) == 8);
  REQUIRE(closed_walk_vertex_count(circulant(5, {1, 2, 3, 4}), 3) == 5);
  REQUIRE_THROWS_AS(closed_walk_vertex_count(circulant(5, {1, 4}), 0), UsageError);
  REQUIRE_THROWS_AS(closed_walk_vertex_count(circulant(5, {1, 4}), 5), UsageError);
}

TEST_CASE("twisted walk census on the smallest alternating instance") {
  GroupPtr a6 = parse_group("alt:6");
  std::vector<Elem> gens = {parse_element(a6, "(1,2,3)"), parse_element(a6, "(1,3,2)")};
  ConnectionMultiset f = ConnectionMultiset::from_elems(a6, gens);
  GroupMap sigma = transposition_conjugation(a6, 0, 1);
  VariantGraph g = build_variant(a6, f, Variant::TwistedCayley, &sigma);
  WalkCountReport r = twisted_walk_census(g, a6, f, sigma, 3, 6, 1);
  REQUIRE(r.criterion_matches);
  REQUIRE(r.bound_holds);
  REQUIRE(r.vertices_with_walk >= 6);  // (6-2)!/4
  REQUIRE(r.envelope > 0.0);
  REQUIRE(r.envelope_scaled > 0.0);
}

TEST_CASE("cheeger constants of the complete graph") {
  VariantGraph k5 = circulant(5, {1, 2, 3, 4});
  CheegerReport r = cheeger_exact(k5, compute_spectrum(k5));
  REQUIRE(r.h_edge == Catch::Approx(3.0).margin(1e-12));   // cut 2 vertices: 6 edges / 2
  REQUIRE(r.h_vertex == Catch::Approx(1.5).margin(1e-12));  // 3 outside / 2 chosen
  REQUIRE(r.buser_lower);
  REQUIRE(r.buser_upper);
  REQUIRE_FALSE(r.edge_cut.empty());
}

TEST_CASE("cheeger constants of cycles") {
  VariantGraph c4 = circulant(4, {1, 3});
  CheegerReport r4 = cheeger_exact(c4, compute_spectrum(c4));
  REQUIRE(r4.h_edge == Catch::Approx(1.0).margin(1e-12));
  VariantGraph c16 = circulant(16, {1, 15});
  CheegerReport r16 = cheeger_exact(c16, compute_spectrum(c16));
  REQUIRE(r16.h_edge == Catch::Approx(0.25).margin(1e-12));  // 2 boundary / 8 inside
  REQUIRE(r16.edge_cut.size() == 8);
  REQUIRE(r16.buser_lower);
  REQUIRE(r16.buser_upper);
}

TEST_CASE("cheeger rejects oversized instances") {
  REQUIRE_THROWS_AS(cheeger_exact(circulant(21, {1, 20}), compute_spectrum(circulant(21, {1, 20}))),
                    UsageError);
}

TEST_CASE("expansion interval verdicts by variant") {
  GroupPtr z16 = cyclic(16);
  ConnectionMultiset s = set_of(z16, {1, 15});
  VariantGraph plain = build_variant(z16, s, Variant::Cayley);
  Spectrum sp = compute_spectrum(plain);
  CheegerReport ch = cheeger_exact(plain, sp);
  SpectralIntervalReport r = spectral_interval_check(plain, sp, ch);
  REQUIRE(r.pass);
  REQUIRE(r.upper < 1.0);
  REQUIRE(r.lower > -1.0);
  REQUIRE(r.max_ratio <= r.upper + 1e-12);

  GroupMap neg = inversion_map(z16);
  VariantGraph tw = build_variant(z16, s, Variant::TwistedCayley, &neg);
  Spectrum sptw = compute_spectrum(tw);
  CheegerReport chtw = cheeger_exact(tw, sptw);
  SpectralIntervalReport rtw = spectral_interval_check(tw, sptw, chtw);
  REQUIRE(rtw.pass);

  VariantGraph torus = build_gabber_galil(3, GgTheta::None);
  Spectrum spt = compute_spectrum(torus);
  CheegerReport cht = cheeger_exact(torus, spt);
  REQUIRE_THROWS_AS(spectral_interval_check(torus, spt, cht), UsageError);
}

TEST_CASE("fingerprints match on relabeled isomorphic graphs") {
  Fingerprint a = fingerprint(circulant(5, {1, 4}));
  Fingerprint b = fingerprint(circulant(5, {2, 3}));
  REQUIRE(a == b);
  REQUIRE(a.diameter == 2);
  REQUIRE_FALSE(a.bipartite);
}

TEST_CASE("fingerprints separate the pentagon from its sum variant") {
  GroupPtr z5 = cyclic(5);
  ConnectionMultiset s = set_of(z5, {1, 4});
  Fingerprint plain = fingerprint(build_variant(z5, s, Variant::Cayley));
  Fingerprint sum = fingerprint(build_variant(z5, s, Variant::CayleySum));
  REQUIRE(plain != sum);
  REQUIRE(plain.loop_vertices == 0);
  REQUIRE(sum.loop_vertices == 2);
  REQUIRE(sum.loop_count == 2);
}

TEST_CASE("fingerprint marks unbounded diameters") {
  Fingerprint f = fingerprint(circulant(6, {2, 4}));
  REQUIRE(f.diameter == kNoDiameter);
}

TEST_CASE("fingerprint rejects directed graphs") {
  REQUIRE_THROWS_AS(fingerprint(circulant(5, {1})), MathError);
}

TEST_CASE("translation automorphisms of a twisted class graph") {
  GroupPtr s4 = parse_group("sym:4");
  std::vector<Elem> gens = {parse_element(s4, "(1,2,3)")};
  ConnectionMultiset s = ConnectionMultiset::from_elems(s4, gens);
  GroupMap sigma = inner_automorphism(s4, parse_element(s4, "(1,2)(3,4)"));
  GsSigmaReport r = compute_gs_sigma(s4, s, sigma);
  REQUIRE(r.fixed_subgroup_order == 8);  // centralizer of a double transposition
  REQUIRE(r.contains_fixed);
  REQUIRE(r.ss_inv_size == 1);
  REQUIRE(r.min_class_size == 3);
  REQUIRE(r.size_hypothesis);
  REQUIRE(r.equals_fixed);
  REQUIRE(r.subgroup.size() == 8);
}

TEST_CASE("translation subgroup grows without the size hypothesis") {
  GroupPtr s4 = parse_group("sym:4");
  ConnectionMultiset s = class_connection(s4, parse_element(s4, "(1,2,3)"));
  GroupMap sigma = inner_automorphism(s4, parse_element(s4, "(1,2)(3,4)"));
  GsSigmaReport r = compute_gs_sigma(s4, s, sigma);
  REQUIRE(r.contains_fixed);
  REQUIRE_FALSE(r.size_hypothesis);  // |SS^-1| = 12 is no longer small
  REQUIRE(r.subgroup.size() >= r.fixed_subgroup_order);
}

TEST_CASE("conjugation isomorphism on a stable class set") {
  GroupPtr s4 = parse_group("sym:4");
  ConnectionMultiset s = class_connection(s4, parse_element(s4, "(1,2)"));
  VariantGraph g = build_variant(s4, s, Variant::Cayley);
  ConjugationIsomorphismReport r =
      conjugation_isomorphism(s4, s, g, g, parse_element(s4, "(1,2,3)"));
  REQUIRE(r.set_stable);
  REQUIRE(r.isomorphism);
  REQUIRE_FALSE(r.witness.has_value());
}

TEST_CASE("conjugation isomorphism fails on an unstable set") {
  GroupPtr s4 = parse_group("sym:4");
  std::vector<Elem> gens = {parse_element(s4, "(1,2)"), parse_element(s4, "(3,4)")};
  ConnectionMultiset s = ConnectionMultiset::from_elems(s4, gens);
  VariantGraph g = build_variant(s4, s, Variant::Cayley);
  ConjugationIsomorphismReport r =
      conjugation_isomorphism(s4, s, g, g, parse_element(s4, "(2,3)"));
  REQUIRE_FALSE(r.set_stable);
  REQUIRE_FALSE(r.isomorphism);
  REQUIRE(r.witness.has_value());
}

TEST_CASE("graph isomorphism under an explicit relabeling") {
  VariantGraph a = circulant(5, {1, 4});
  VariantGraph b = circulant(5, {2, 3});
  // x -> 2x maps steps {1,4} to {2,3}
  std::vector<std::uint32_t> perm = {0, 2, 4, 1, 3};
  REQUIRE(graphs_isomorphic_under(perm, a, b));
  std::vector<std::uint32_t> identity = {0, 1, 2, 3, 4};
  REQUIRE_FALSE(graphs_isomorphic_under(identity, a, b));
}
