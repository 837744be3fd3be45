// Acceptance gate: eleven end-to-end checks over the library's headline
// constructions, one PASS/FAIL line each, nonzero exit on any failure.
// Tolerances and runtime ceilings are pinned here on purpose; loosening them
// is a behavior change, not a cleanup.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cgl/analysis.hpp"
#include "cgl/certify.hpp"
#include "cgl/gg.hpp"
#include "cgl/graph.hpp"
#include "cgl/group.hpp"
#include "cgl/group_map.hpp"
#include "cgl/io.hpp"
#include "cgl/named.hpp"
#include "cgl/spectrum.hpp"

namespace {

using namespace cgl;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects requirement failures and free-form notes for one check.
struct Tally {
  std::vector<std::string> fails;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) fails.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }

  Outcome done() const {
    Outcome o;
    o.pass = fails.empty();
    const std::vector<std::string>& src = o.pass ? notes : fails;
    std::ostringstream s;
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (i) s << "; ";
      s << src[i];
    }
    o.detail = s.str();
    return o;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::uint64_t fact(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

GroupPtr cyc(int n) { return build_group(Family::Cyclic, n); }

Elem cyc_elem(int r) {
  Elem e{};
  e[0] = static_cast<int16_t>(r);
  return e;
}

ConnectionMultiset residues(const GroupPtr& g, std::initializer_list<int> rs) {
  std::vector<Elem> es;
  for (int r : rs) es.push_back(cyc_elem(r));
  return ConnectionMultiset::from_elems(g, es);
}

Elem torus_elem(int a, int b) {
  Elem e{};
  e[0] = static_cast<int16_t>(a);
  e[1] = static_cast<int16_t>(b);
  return e;
}

Elem swap_letters(const GroupPtr& g, int p, int q) {
  Elem e = g->id();
  e[p] = static_cast<int16_t>(q);
  e[q] = static_cast<int16_t>(p);
  return e;
}

Elem three_cycle(const GroupPtr& g, int a, int b, int c) {
  Elem e = g->id();
  e[a] = static_cast<int16_t>(b);
  e[b] = static_cast<int16_t>(c);
  e[c] = static_cast<int16_t>(a);
  return e;
}

std::vector<double> abs_sorted(const std::vector<double>& v) {
  std::vector<double> a;
  a.reserve(v.size());
  for (double x : v) a.push_back(std::fabs(x));
  std::sort(a.begin(), a.end());
  return a;
}

// 1. Twisted graphs over PGL2 from the sum-of-four-squares connection sets:
//    every twist choice keeps the whole nontrivial spectrum inside the
//    2 sqrt(d-1) window, and the large plain instance does too.
Outcome check_lps() {
  Tally t;
  auto t0 = Clock::now();
  LpsData d = lps_build(13, 5);
  t.require(d.group->order() == 120, "PGL2(F5) has order 120");
  double bound13 = 2.0 * std::sqrt(13.0);
  double worst = 0.0;
  for (int choice = 1; choice <= 5; ++choice) {
    GroupMap sigma = lps_sigma(d, choice);
    VariantGraph g = build_variant(d.group, d.s, Variant::TwistedCayley, &sigma);
    std::string tag = "sigma " + std::to_string(choice);
    t.require(g.n == 120 && g.degree == 14 && g.undirected, tag + ": 120 vertices, 14-regular, undirected");
    RamanujanCertificate c = certify_ramanujan(g, 1e-6);  // rejects disconnected input
    t.require(c.pass && c.lambda_star <= bound13 + 1e-6, tag + ": |lambda| <= 2 sqrt(13)");
    worst = std::max(worst, c.lambda_star);
  }
  double small = seconds_since(t0);
  t.require(small < 5.0, "small instances under 5 s (took " + fmt(small) + ")");

  LpsData w = lps_build(5, 13);
  VariantGraph big = build_variant(w.group, w.s, Variant::Cayley);
  t.require(big.n == 2184 && big.degree == 6, "PGL2(F13) instance is 2184 vertices, 6-regular");
  RamanujanCertificate c = certify_ramanujan(big, 1e-6);
  t.require(c.pass && c.lambda_star <= 2.0 * std::sqrt(5.0) + 1e-6, "2184-vertex |lambda| <= 2 sqrt(5)");
  double total = seconds_since(t0);
  t.require(total < 600.0, "dense solve under 10 min (took " + fmt(total) + ")");
  t.note("worst small lambda* " + fmt(worst) + " vs " + fmt(bound13) + ", big lambda* " +
         fmt(c.lambda_star) + " vs " + fmt(2.0 * std::sqrt(5.0)));
  return t.done();
}

// 2. Quadratic-residue graphs: the sum variant at four prime orders, and both
//    Frobenius-twisted variants at order 9.
Outcome check_paley() {
  Tally t;
  auto t0 = Clock::now();
  for (int q : {5, 13, 17, 29}) {
    RamanujanCertificate c = certify_ramanujan(paley(q, PaleyVariant::Sum), 1e-6);
    t.require(c.pass, "sum variant q=" + std::to_string(q));
  }
  VariantGraph tg = paley(9, PaleyVariant::TwistedGraph);
  VariantGraph ts = paley(9, PaleyVariant::TwistedSum);
  t.require(tg.n == 9 && tg.degree == 4 && ts.n == 9 && ts.degree == 4,
            "order-9 twists are 9 vertices, 4-regular");
  t.require(certify_ramanujan(tg, 1e-6).pass, "twisted graph q=9");
  t.require(certify_ramanujan(ts, 1e-6).pass, "twisted sum q=9");
  double total = seconds_since(t0);
  t.require(total < 5.0, "runtime under 5 s (took " + fmt(total) + ")");
  t.note("6 certificates in " + fmt(total) + " s");
  return t.done();
}

// 3. Unipotent-class graphs over SL2: sum, twisted, and twisted-sum variants
//    certify at q = 3 and q = 7 for both conjugation twists.
Outcome check_sl2_class() {
  Tally t;
  auto t0 = Clock::now();
  for (int q : {3, 7}) {
    GroupPtr g = build_group(Family::SL2, q);
    ConnectionMultiset s = sl2_class_set(g);
    std::string base = "q=" + std::to_string(q);
    t.require(certify_ramanujan(build_variant(g, s, Variant::CayleySum), 1e-6).pass,
              base + " sum variant");
    for (int choice : {1, 2}) {
      GroupMap sigma = sl2_sigma(g, choice);
      std::string tag = base + " twist " + std::to_string(choice);
      t.require(certify_ramanujan(build_variant(g, s, Variant::TwistedCayley, &sigma), 1e-6).pass,
                tag + " twisted");
      t.require(
          certify_ramanujan(build_variant(g, s, Variant::TwistedCayleySum, &sigma), 1e-6).pass,
          tag + " twisted sum");
    }
  }
  double total = seconds_since(t0);
  t.require(total < 30.0, "runtime under 30 s (took " + fmt(total) + ")");
  t.note("10 certificates in " + fmt(total) + " s");
  return t.done();
}

// 4. Signed transport between variants: for three base instances and every
//    pair of the four variants the permutation transport is an exact integer
//    identity and the signed eigenvalue split has the predicted dimensions.
Outcome check_pairing() {
  Tally t;
  auto t0 = Clock::now();
  struct Inst {
    std::string name;
    GroupPtr g;
    ConnectionMultiset s;
    GroupMap sigma;
  };
  std::vector<Inst> insts;
  {
    GroupPtr g = cyc(8);
    insts.push_back({"Z/8", g, residues(g, {1, 7}), inversion_map(g)});
  }
  {
    GroupPtr g = build_group(Family::Symmetric, 4);
    auto cls = conjugacy_class(g, swap_letters(g, 0, 1));
    insts.push_back({"S4", g, ConnectionMultiset::from_elems(g, cls),
                     transposition_conjugation(g, 0, 1)});
  }
  {
    GroupPtr g = build_group(Family::SL2, 3);
    insts.push_back({"SL2(F3)", g, sl2_class_set(g), sl2_sigma(g, 1)});
  }
  int pairs = 0;
  for (const Inst& inst : insts)
    for (int vi = 1; vi <= 3; ++vi)
      for (int vj = vi + 1; vj <= 4; ++vj) {
        PairingReport r = pairing_certificate(inst.g, inst.s, &inst.sigma, vi, vj, 1e-6);
        std::string tag =
            inst.name + " (" + std::to_string(vi) + "," + std::to_string(vj) + ")";
        t.require(r.pass(), tag + " certificate");
        t.require(2 * r.dim_plus == r.n + r.fixed_points, tag + " plus-space dimension");
        ++pairs;
      }
  t.require(pairs == 18, "all 18 variant pairs covered");
  double total = seconds_since(t0);
  t.require(total < 10.0, "runtime under 10 s (took " + fmt(total) + ")");
  t.note("18 transports in " + fmt(total) + " s");
  return t.done();
}

// 5. Degree-8 torus walk graphs: every twist stays undirected, keeps the
//    nontrivial spectrum inside +-2(1+2 sqrt 2), matches the untwisted graph
//    in |lambda| multiset, and the three Klein-four twist groups are
//    h-isospectral in the signed, character-resolved sense.
Outcome check_torus_twists() {
  Tally t;
  auto t0 = Clock::now();
  const double edge = 2.0 * (1.0 + 2.0 * std::sqrt(2.0)) + 1e-9;
  const GgTheta all[6] = {GgTheta::None,  GgTheta::Swap, GgTheta::NegSwap,
                          GgTheta::NegX, GgTheta::NegY, GgTheta::Neg};
  for (int n = 2; n <= 16; ++n) {
    std::string base = "n=" + std::to_string(n);
    VariantGraph graphs[6];
    Spectrum spectra[6];
    for (int i = 0; i < 6; ++i) {
      graphs[i] = build_gabber_galil(n, all[i]);
      t.require(graphs[i].undirected, base + " " + gg_theta_tag(all[i]) + " undirected");
      spectra[i] = compute_spectrum(graphs[i]);
      t.require(spectra[i].max_abs_nontrivial() <= edge,
                base + " " + gg_theta_tag(all[i]) + " spectral window");
    }
    std::vector<double> base_abs = abs_sorted(spectra[0].values);
    for (int i = 1; i < 6; ++i)
      t.require(multiset_equal(abs_sorted(spectra[i].values), base_abs, 1e-6),
                base + " " + gg_theta_tag(all[i]) + " |lambda| multiset");
    auto slot = [&](GgTheta th) {
      for (int i = 0; i < 6; ++i)
        if (all[i] == th) return i;
      return 0;
    };
    for (int which = 1; which <= 3; ++which) {
      std::vector<GgTheta> thetas = gg_klein_group(which);
      std::vector<VariantGraph> family;
      for (GgTheta th : thetas) family.push_back(graphs[slot(th)]);
      JointSplitInput in;
      in.perms = {gg_theta_perm(n, thetas[1]), gg_theta_perm(n, thetas[2])};
      in.names = {gg_theta_tag(thetas[1]), gg_theta_tag(thetas[2])};
      t.require(h_isospectral_check(family, in, 1e-6).pass,
                base + " klein group " + std::to_string(which));
    }
  }
  double total = seconds_since(t0);
  t.require(total < 60.0, "runtime under 60 s (took " + fmt(total) + ")");
  t.note("15 sizes x (6 spectra + 3 klein checks) in " + fmt(total) + " s");
  return t.done();
}

// 6. Signed joint splits on randomized instances: whenever the twisted
//    spectra agree with the base spectrum, every nontrivial character block
//    is symmetric about zero and the symmetric-subset size is exactly
//    N - dim of the all-plus block.
Outcome check_joint_split() {
  Tally t;
  auto t0 = Clock::now();
  std::mt19937_64 rng(0x20260815ull);

  GroupPtr z12 = cyc(12);
  GroupMap zneg = inversion_map(z12);

  GroupPtr torus = build_group(Family::ProductCyclic, 4);
  GroupMap tneg = inversion_map(torus);
  GroupMap tswap = make_group_map(
      torus,
      [](const Elem& e) {
        Elem y{};
        y[0] = e[1];
        y[1] = e[0];
        return y;
      },
      MapKind::Automorphism, "swap");

  GroupPtr s4 = build_group(Family::Symmetric, 4);
  GroupMap c12 = transposition_conjugation(s4, 0, 1);
  GroupMap c34 = transposition_conjugation(s4, 2, 3);
  std::vector<std::vector<Elem>> s4_classes = {
      conjugacy_class(s4, swap_letters(s4, 0, 1)),
      conjugacy_class(s4, three_cycle(s4, 0, 1, 2)),
      conjugacy_class(s4, s4->mul(swap_letters(s4, 0, 1), swap_letters(s4, 2, 3))),
      conjugacy_class(s4, s4->mul(swap_letters(s4, 0, 1), three_cycle(s4, 1, 2, 3)))};

  int held = 0, attempts = 0;
  int per_base[3] = {0, 0, 0};
  while (held < 50 && attempts < 1200) {
    int which = attempts % 3;
    ++attempts;
    GroupPtr g;
    std::vector<GroupMap> maps;
    ConnectionMultiset s;
    if (which == 0) {
      std::uint32_t mask = static_cast<std::uint32_t>(rng()) & 0x7Fu;  // residues 0..6
      if (!mask) continue;
      std::set<Elem> es;
      for (int r = 0; r <= 6; ++r)
        if ((mask >> r) & 1u) {
          es.insert(cyc_elem(r));
          es.insert(cyc_elem((12 - r) % 12));
        }
      g = z12;
      maps = {zneg};
      s = ConnectionMultiset::from_elems(g, std::vector<Elem>(es.begin(), es.end()));
    } else if (which == 1) {
      std::set<Elem> raw;
      for (std::uint32_t i = 0; i < torus->order(); ++i)
        if (rng() % 3 == 0) raw.insert(torus->at(i));
      if (raw.empty()) continue;
      auto seed = ConnectionMultiset::from_elems(torus, std::vector<Elem>(raw.begin(), raw.end()));
      // closing the orbit under negation doubles as inverse closure
      s = closure_set(seed, ClosureMode::Orbit, {tneg, tswap});
      g = torus;
      maps = {tneg, tswap};
    } else {
      std::uint32_t mask = static_cast<std::uint32_t>(rng()) & 0xFu;
      if (!mask) continue;
      std::set<Elem> es;
      for (int c = 0; c < 4; ++c)
        if ((mask >> c) & 1u) es.insert(s4_classes[c].begin(), s4_classes[c].end());
      g = s4;
      maps = {c12, c34};
      s = ConnectionMultiset::from_elems(g, std::vector<Elem>(es.begin(), es.end()));
    }
    VariantGraph a = build_variant(g, s, Variant::Cayley);
    JointSplitReport r = joint_signed_split(a, joint_input_from_maps(maps), 1e-6);
    if (!r.hypothesis) continue;
    ++held;
    ++per_base[which];
    std::string tag = "attempt " + std::to_string(attempts);
    t.require(r.projectors_ok && r.dims_agree && r.dims_sum_ok, tag + " projector split");
    t.require(r.all_symmetric, tag + " signed symmetry of every nontrivial block");
    t.require(r.symmetric_size == r.n - r.dims[0], tag + " symmetric-subset size");
    t.require(r.subset_ok, tag + " spectrum carries the symmetric subset");
  }
  t.require(held == 50,
            "50 hypothesis-holding instances (got " + std::to_string(held) + " from " +
                std::to_string(attempts) + " attempts)");
  t.note("50 instances in " + std::to_string(attempts) + " attempts (Z/12 " +
         std::to_string(per_base[0]) + ", Z4xZ4 " + std::to_string(per_base[1]) + ", S4 " +
         std::to_string(per_base[2]) + "), " + fmt(seconds_since(t0)) + " s");
  return t.done();
}

// 7. Diameter comparisons: the factor-2 relation across every pair of the
//    four variants on four base instances, and the entropy lower bound on
//    abelian sum/twisted instances where it binds.
Outcome check_diameters() {
  Tally t;
  auto t0 = Clock::now();
  struct Base {
    std::string name;
    GroupPtr g;
    ConnectionMultiset s;
    GroupMap sigma;
  };
  std::vector<Base> bases;
  {
    GroupPtr g = cyc(16);
    bases.push_back({"Z/16", g, residues(g, {1, 15}), inversion_map(g)});
  }
  {
    GroupPtr g = cyc(12);
    bases.push_back({"Z/12", g, residues(g, {1, 11, 3, 9}), inversion_map(g)});
  }
  {
    GroupPtr g = build_group(Family::Symmetric, 4);
    auto cls = conjugacy_class(g, swap_letters(g, 0, 1));
    bases.push_back({"S4", g, ConnectionMultiset::from_elems(g, cls),
                     transposition_conjugation(g, 0, 1)});
  }
  {
    GroupPtr g = build_group(Family::ProductCyclic, 4);
    auto s = ConnectionMultiset::from_elems(
        g, {torus_elem(1, 0), torus_elem(3, 0), torus_elem(0, 1), torus_elem(0, 3)});
    bases.push_back({"Z4xZ4", g, s, inversion_map(g)});
  }
  int relations = 0;
  for (const Base& b : bases) {
    VariantGraph v[5];
    v[1] = build_variant(b.g, b.s, Variant::Cayley);
    v[2] = build_variant(b.g, b.s, Variant::CayleySum);
    v[3] = build_variant(b.g, b.s, Variant::TwistedCayley, &b.sigma);
    v[4] = build_variant(b.g, b.s, Variant::TwistedCayleySum, &b.sigma);
    for (int i = 1; i <= 3; ++i)
      for (int j = i + 1; j <= 4; ++j) {
        DiameterRelationReport r = diameter_relation_check(v[i], v[j], i, j);
        t.require(r.pass, b.name + " pair (" + std::to_string(i) + "," + std::to_string(j) +
                              ") factor-2 relation");
        ++relations;
      }
  }
  t.require(relations >= 20, "at least 20 relation instances (got " +
                                 std::to_string(relations) + ")");

  // entropy bound (s/4e) n^{1/s} - s/2 is positive for {+-1} once n >= 64
  std::string biggest;
  for (int n : {64, 256, 4096}) {
    GroupPtr g = cyc(n);
    ConnectionMultiset s = residues(g, {1, n - 1});
    GroupMap sigma = inversion_map(g);
    struct Var {
      Variant v;
      const char* tag;
      bool twisted;
    };
    for (Var var : {Var{Variant::CayleySum, "sum", false},
                    Var{Variant::TwistedCayley, "twisted", true},
                    Var{Variant::TwistedCayleySum, "twisted sum", true}}) {
      VariantGraph graph = build_variant(g, s, var.v, var.twisted ? &sigma : nullptr);
      AbelianDiameterReport r = abelian_diameter_check(graph, g, 2);
      std::string tag = std::string(var.tag) + " n=" + std::to_string(n);
      t.require(r.bound > 0.0, tag + " bound binds");
      t.require(r.pass, tag + " diameter >= bound");
      if (n == 4096 && var.v == Variant::CayleySum)
        biggest = "n=4096 sum: diam " + std::to_string(r.diameter) + " >= " + fmt(r.bound);
    }
  }
  double total = seconds_since(t0);
  t.require(total < 10.0, "runtime under 10 s (took " + fmt(total) + ")");
  t.note(std::to_string(relations) + " relations; " + biggest + "; " + fmt(total) + " s");
  return t.done();
}

// 8. Exact expansion constants on every small undirected connected builder
//    instance: the Buser sandwich around h_edge/d and the eighth-power
//    spectral interval with the variant-correct exponent.
Outcome check_cheeger() {
  Tally t;
  auto t0 = Clock::now();
  std::vector<std::pair<std::string, VariantGraph>> insts;
  auto add_four = [&](const std::string& base, const GroupPtr& g, const ConnectionMultiset& s,
                      const GroupMap* sigma) {
    insts.emplace_back(base + "/cayley", build_variant(g, s, Variant::Cayley));
    insts.emplace_back(base + "/sum", build_variant(g, s, Variant::CayleySum));
    if (sigma) {
      insts.emplace_back(base + "/twisted", build_variant(g, s, Variant::TwistedCayley, sigma));
      insts.emplace_back(base + "/twisted-sum",
                         build_variant(g, s, Variant::TwistedCayleySum, sigma));
    }
  };
  for (int n = 3; n <= 14; ++n) {
    GroupPtr g = cyc(n);
    GroupMap neg = inversion_map(g);
    add_four("Z/" + std::to_string(n), g, residues(g, {1, n - 1}), &neg);
  }
  {
    GroupPtr g = cyc(8);
    GroupMap neg = inversion_map(g);
    add_four("Z/8+4", g, residues(g, {1, 7, 4}), &neg);
  }
  {
    GroupPtr g = cyc(12);
    GroupMap neg = inversion_map(g);
    add_four("Z/12+6", g, residues(g, {1, 11, 6}), &neg);
  }
  insts.emplace_back("paley5/graph", paley(5, PaleyVariant::Graph));
  insts.emplace_back("paley5/sum", paley(5, PaleyVariant::Sum));
  insts.emplace_back("paley13/graph", paley(13, PaleyVariant::Graph));
  insts.emplace_back("paley13/sum", paley(13, PaleyVariant::Sum));
  insts.emplace_back("paley9/graph", paley(9, PaleyVariant::Graph));
  insts.emplace_back("paley9/sum", paley(9, PaleyVariant::Sum));
  insts.emplace_back("paley9/twisted", paley(9, PaleyVariant::TwistedGraph));
  insts.emplace_back("paley9/twisted-sum", paley(9, PaleyVariant::TwistedSum));
  {
    GroupPtr g = build_group(Family::Symmetric, 3);
    auto cls = conjugacy_class(g, swap_letters(g, 0, 1));
    GroupMap sigma = transposition_conjugation(g, 0, 1);
    add_four("S3", g, ConnectionMultiset::from_elems(g, cls), &sigma);
  }
  {
    GroupPtr g = parse_group("dihedral:6");
    add_four("D6", g, parse_connection(g, "r;r5;s"), nullptr);
  }
  {
    GroupPtr g = build_group(Family::ProductCyclic, 3);
    GroupMap neg = inversion_map(g);
    auto s = ConnectionMultiset::from_elems(
        g, {torus_elem(1, 0), torus_elem(2, 0), torus_elem(0, 1), torus_elem(0, 2)});
    add_four("Z3xZ3", g, s, &neg);
  }
  insts.emplace_back("walk-torus-2", build_gabber_galil(2));
  insts.emplace_back("walk-torus-3", build_gabber_galil(3));

  int checked = 0;
  std::string skipped;
  auto skip = [&skipped](const std::string& name, const char* why) {
    if (!skipped.empty()) skipped += ", ";
    skipped += name;
    skipped += why;
  };
  for (const auto& [name, g] : insts) {
    if (!g.undirected) {
      skip(name, " (directed)");
      continue;
    }
    Spectrum sp = compute_spectrum(g);
    if (!sp.connected) {
      skip(name, " (disconnected)");
      continue;
    }
    CheegerReport ch = cheeger_exact(g, sp);
    t.require(ch.buser_lower && ch.buser_upper, name + " Buser sandwich");
    if (g.variant != Variant::Schreier)
      t.require(spectral_interval_check(g, sp, ch).pass, name + " spectral interval");
    ++checked;
  }
  t.require(checked >= 60, "at least 60 instances certified (got " + std::to_string(checked) + ")");
  double total = seconds_since(t0);
  t.require(total < 60.0, "runtime under 60 s (took " + fmt(total) + ")");
  t.note(std::to_string(checked) + " instances" +
         (skipped.empty() ? std::string() : "; skipped " + skipped) + ", " + fmt(total) + " s");
  return t.done();
}

// 9. Closed-3-walk census on twisted alternating-group graphs with the
//    two 3-cycle connection elements: the algebraic criterion matches the DFS
//    count and clears the (n-2)!/4 floor; the analytic envelope is reported.
Outcome check_walk_census() {
  Tally t;
  auto t0 = Clock::now();
  std::string counts;
  for (int n : {6, 7, 8}) {
    GroupPtr g = build_group(Family::Alternating, n);
    Elem c1 = three_cycle(g, 0, 1, 2);
    auto s = ConnectionMultiset::from_elems(g, {c1, g->inv(c1)});
    GroupMap sigma = transposition_conjugation(g, 0, 1);
    VariantGraph graph = build_variant(g, s, Variant::TwistedCayley, &sigma);
    WalkCountReport r = twisted_walk_census(graph, g, s, sigma, 3, n, 1);
    std::string tag = "A" + std::to_string(n);
    t.require(r.criterion_matches, tag + " algebraic criterion matches walk count");
    t.require(r.bound_holds, tag + " count clears (n-2)!/4");
    t.require(4ull * r.vertices_with_walk >= fact(n - 2), tag + " floor re-checked");
    if (!counts.empty()) counts += ", ";
    counts += tag + " " + std::to_string(r.vertices_with_walk) + " >= " + fmt(r.lower_bound) +
              " (envelope " + fmt(r.envelope) + ")";
  }
  double total = seconds_since(t0);
  t.require(total < 120.0, "runtime under 120 s (took " + fmt(total) + ")");
  t.note(counts + "; " + fmt(total) + " s");
  return t.done();
}

// 10. Twisted cycles are not an expander family: the one-sided normalized
//     gap shrinks strictly along n = 8, 16, 32, 64 and ends below 0.1.
Outcome check_shrinking_gap() {
  Tally t;
  double prev = 2.0;
  std::string seq;
  for (int n : {8, 16, 32, 64}) {
    GroupPtr g = cyc(n);
    ConnectionMultiset s = residues(g, {1, n - 1});
    GroupMap sigma = inversion_map(g);
    VariantGraph graph = build_variant(g, s, Variant::TwistedCayley, &sigma);
    SpectralGapReport r = spectral_gap(compute_spectrum(graph));
    t.require(r.one_sided < prev, "gap shrinks at n=" + std::to_string(n));
    prev = r.one_sided;
    if (!seq.empty()) seq += " > ";
    seq += fmt(r.one_sided);
  }
  t.require(prev < 0.1, "final gap below 0.1 (got " + fmt(prev) + ")");
  t.note(seq);
  return t.done();
}

// 11. Character-block dimensions agree with projector ranks on every small
//     instance, and the moved-by-all counts over symmetric and alternating
//     groups match the closed forms n! - 2(n-2)! and n!/2 - (n-2)!, with the
//     ratio climbing monotonically.
Outcome check_isotypic_uniformity() {
  Tally t;
  struct Inst {
    std::string name;
    JointSplitInput in;
    std::uint32_t n;
  };
  std::vector<Inst> insts;
  for (int n : {4, 8, 12, 16}) {
    GroupPtr g = cyc(n);
    insts.push_back({"Z/" + std::to_string(n), joint_input_from_maps({inversion_map(g)}),
                     static_cast<std::uint32_t>(n)});
  }
  {
    GroupPtr g = build_group(Family::ProductCyclic, 4);
    GroupMap swap = make_group_map(
        g,
        [](const Elem& e) {
          Elem y{};
          y[0] = e[1];
          y[1] = e[0];
          return y;
        },
        MapKind::Automorphism, "swap");
    insts.push_back({"Z4xZ4", joint_input_from_maps({inversion_map(g), swap}), 16});
  }
  {
    GroupPtr g = build_group(Family::Symmetric, 4);
    insts.push_back({"S4 one conj", joint_input_from_maps({transposition_conjugation(g, 0, 1)}), 24});
    insts.push_back({"S4 two conj",
                     joint_input_from_maps({transposition_conjugation(g, 0, 1),
                                            transposition_conjugation(g, 2, 3)}),
                     24});
  }
  {
    GroupPtr g = build_group(Family::Symmetric, 5);
    insts.push_back({"S5", joint_input_from_maps({transposition_conjugation(g, 0, 1)}), 120});
  }
  {
    GroupPtr g = build_group(Family::Alternating, 4);
    insts.push_back({"A4", joint_input_from_maps({transposition_conjugation(g, 0, 1)}), 12});
  }
  {
    GroupPtr g = build_group(Family::Alternating, 5);
    insts.push_back({"A5", joint_input_from_maps({transposition_conjugation(g, 0, 1)}), 60});
  }
  {
    GroupPtr g = parse_group("dihedral:6");
    insts.push_back({"D6", joint_input_from_maps({inversion_map(g)}), 12});
  }
  for (const Inst& inst : insts) {
    IsotypicReport r = isotypic_dimensions(inst.in, inst.n);  // throws on rank mismatch
    t.require(r.rank_checked && r.rank_agrees, inst.name + " ranks cross-checked");
    std::uint32_t sum = std::accumulate(r.dims.begin(), r.dims.end(), 0u);
    t.require(sum == inst.n, inst.name + " dimensions sum to N");
  }

  UniformityTable sym = uniformity_table(Family::Symmetric, 1, 4, 7);
  std::string ms = "sym m:";
  for (const UniformityRow& row : sym.rows) {
    std::uint64_t want = fact(row.degree) - 2 * fact(row.degree - 2);
    t.require(row.m == want, "sym n=" + std::to_string(row.degree) + " moved-by-all count");
    ms += " " + std::to_string(row.m);
  }
  t.require(sym.ratio_monotone, "sym ratio strictly increases");

  UniformityTable alt = uniformity_table(Family::Alternating, 1, 4, 7);
  ms += "; alt m:";
  for (const UniformityRow& row : alt.rows) {
    std::uint64_t want = fact(row.degree) / 2 - fact(row.degree - 2);
    t.require(row.m == want, "alt n=" + std::to_string(row.degree) + " moved-by-all count");
    ms += " " + std::to_string(row.m);
  }
  t.require(alt.ratio_monotone, "alt ratio strictly increases");
  t.note(ms);
  return t.done();
}

}  // namespace

int main() {
  struct Check {
    int id;
    const char* name;
    std::function<Outcome()> fn;
  };
  const std::vector<Check> checks = {
      {1, "lps-twist-ramanujan", check_lps},
      {2, "paley-ramanujan", check_paley},
      {3, "sl2-class-ramanujan", check_sl2_class},
      {4, "variant-pairing", check_pairing},
      {5, "torus-twist-isospectral", check_torus_twists},
      {6, "joint-split-randomized", check_joint_split},
      {7, "diameter-relations", check_diameters},
      {8, "cheeger-interval", check_cheeger},
      {9, "twisted-walk-census", check_walk_census},
      {10, "shrinking-gap", check_shrinking_gap},
      {11, "isotypic-uniformity", check_isotypic_uniformity},
  };
  int failed = 0;
  for (const Check& c : checks) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double dt = seconds_since(t0);
    if (!o.pass) ++failed;
    std::printf("[%2d] %s (%7.2fs) %-26s%s%s\n", c.id, o.pass ? "PASS" : "FAIL", dt, c.name,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu checks, %d failed\n", checks.size(), failed);
  return failed ? 1 : 0;
}
