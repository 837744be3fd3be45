#pragma once

#include <iostream>
#include <map>
#include <string>

#include "cgl/io.hpp"

namespace cgl {

/// Flag values for one command invocation, keyed by long option name.
using Params = std::map<std::string, std::string>;

inline std::optional<std::string> param(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) return std::nullopt;
  return it->second;
}

inline std::string need_param(const Params& p, const std::string& key) {
  auto v = param(p, key);
  if (!v) throw UsageError("missing --" + key);
  return *v;
}

inline Json echo_inputs(const Params& p) {
  Json j = Json::object();
  for (const auto& [k, v] : p)
    if (k != "out") j[k] = v;
  return j;
}

/// Primary artifact goes to --out when given, otherwise to the stream.
inline void emit(const Params& p, std::ostream& os, const std::string& text) {
  if (auto out = param(p, "out")) {
    write_file(*out, text);
    os << "wrote " << *out << "\n";
  } else {
    os << text;
  }
}

inline void emit_json(const Params& p, std::ostream& os, const Json& j) {
  emit(p, os, j.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// commands

inline int cmd_build(const Params& p, const RunConfig&, std::ostream& os) {
  BuiltGraph b = build_from_spec(need_param(p, "family"));
  emit_json(p, os, graph_to_json(b.graph));
  return 0;
}

inline int cmd_spectrum(const Params& p, const RunConfig&, std::ostream& os) {
  VariantGraph g;
  if (auto fam = param(p, "family")) {
    g = build_from_spec(*fam).graph;
  } else if (auto path = param(p, "graph")) {
    g = read_graph_json(*path);
  } else {
    throw UsageError("spectrum needs --family or --graph");
  }
  Spectrum s = compute_spectrum(g);
  emit(p, os, spectrum_csv(s.values));
  return 0;
}

inline GroupMap parse_sigma_or_id(const GroupPtr& g, const Params& p) {
  auto s = param(p, "sigma");
  return s ? parse_sigma(g, *s) : identity_map(g);
}

inline int cmd_certify(const Params& p, const RunConfig& cfg, std::ostream& os) {
  std::string kind = need_param(p, "kind");
  Json out;
  bool pass = false;

  if (kind == "ramanujan") {
    BuiltGraph b = build_from_spec(need_param(p, "family"));
    RamanujanCertificate c = certify_ramanujan(b.graph, cfg.tol);
    out = ramanujan_to_json(c, echo_inputs(p));
    pass = c.pass;
  } else if (kind == "pairing") {
    GroupPtr g = parse_group(need_param(p, "group"));
    ConnectionMultiset s = parse_connection(g, need_param(p, "set"));
    int vi = parse_int(need_param(p, "i"), "variant index");
    int vj = parse_int(need_param(p, "j"), "variant index");
    std::optional<GroupMap> sigma;
    if (auto sg = param(p, "sigma")) sigma = parse_sigma(g, *sg);
    if ((vi >= 3 || vj >= 3) && !sigma)
      throw UsageError("twisted variants in a pairing need --sigma");
    PairingReport r = pairing_certificate(g, s, sigma ? &*sigma : nullptr, vi, vj, cfg.tol);
    out = pairing_to_json(r, echo_inputs(p));
    pass = r.pass();
  } else if (kind == "h-isospectral") {
    std::vector<VariantGraph> family;
    JointSplitInput in;
    if (auto ggn = param(p, "gg-n")) {
      int n = parse_int(*ggn, "grid size");
      std::vector<GgTheta> thetas = gg_klein_group(parse_int(need_param(p, "klein"), "klein"));
      for (GgTheta t : thetas) family.push_back(build_gabber_galil(n, t));
      in.perms = {gg_theta_perm(n, thetas[1]), gg_theta_perm(n, thetas[2])};
      in.names = {gg_theta_tag(thetas[1]), gg_theta_tag(thetas[2])};
    } else {
      GroupPtr g = parse_group(need_param(p, "group"));
      GroupMap sigma = parse_sigma(g, need_param(p, "sigma"));
      ConnectionMultiset hs = closure_set(parse_connection(g, need_param(p, "set")),
                                          ClosureMode::Orbit, {sigma});
      family.push_back(build_variant(g, hs, Variant::Cayley));
      family.push_back(build_variant(g, hs, Variant::TwistedCayley, &sigma));
      in = joint_input_from_maps({sigma});
    }
    HIsospectralReport r = h_isospectral_check(family, in, cfg.tol);
    out = h_isospectral_to_json(r, echo_inputs(p));
    pass = r.pass;
  } else if (kind == "dichotomy") {
    GroupPtr g = parse_group(need_param(p, "group"));
    ConnectionMultiset s = parse_connection(g, need_param(p, "set"));
    std::vector<GroupMap> maps;
    for (const std::string& part : split_top(need_param(p, "sigma"), ';'))
      maps.push_back(parse_sigma(g, part));
    if (maps.empty()) throw UsageError("dichotomy needs at least one twist");
    VariantGraph a = build_variant(g, s, Variant::Cayley);
    DichotomyReport r = dichotomy_check(a, joint_input_from_maps(maps), cfg.tol);
    out = dichotomy_to_json(r, echo_inputs(p));
    pass = r.pass;
  } else {
    throw UsageError("unknown certificate kind '" + kind + "'");
  }

  emit_json(p, os, out);
  return pass ? 0 : 1;
}

inline int cmd_analyze(const Params& p, const RunConfig& cfg, std::ostream& os) {
  std::string kind = need_param(p, "kind");
  Json inputs = echo_inputs(p);
  Json numbers = Json::object();
  Json witnesses = Json::object();
  bool pass = true;

  if (kind == "diameter") {
    BuiltGraph b = build_from_spec(need_param(p, "family"));
    if (auto famj = param(p, "family-j")) {
      BuiltGraph bj = build_from_spec(*famj);
      DiameterRelationReport r = diameter_relation_check(
          b.graph, bj.graph, variant_index(b.graph.variant), variant_index(bj.graph.variant));
      numbers = {{"diam_i", r.diam_i}, {"diam_j", r.diam_j}};
      numbers["forward"] = r.forward;
      numbers["backward"] = r.backward;
      pass = r.pass;
    } else {
      std::optional<std::uint32_t> d = bfs_diameter(b.graph);
      numbers["diameter"] = d ? Json(*d) : Json(nullptr);
      numbers["connected"] = d.has_value();
      bool eligible = b.group && b.set && b.group->is_abelian() &&
                      b.graph.variant != Variant::Cayley && b.graph.variant != Variant::Schreier;
      if (d && eligible) {
        AbelianDiameterReport a = abelian_diameter_check(b.graph, b.group, b.set->degree);
        numbers["abelian_bound"] = a.bound;
        numbers["abelian_bound_holds"] = a.pass;
        pass = a.pass;
      }
    }
  } else if (kind == "cheeger") {
    BuiltGraph b = build_from_spec(need_param(p, "family"));
    Spectrum spec = compute_spectrum(b.graph);
    CheegerReport ch = cheeger_exact(b.graph, spec);
    numbers = {{"h_edge", ch.h_edge},
               {"h_vertex", ch.h_vertex},
               {"lambda2_over_d", ch.lambda2_over_d},
               {"buser_lower", ch.buser_lower},
               {"buser_upper", ch.buser_upper}};
    witnesses = {{"edge_cut", ch.edge_cut}, {"vertex_cut", ch.vertex_cut}};
    pass = ch.buser_lower && ch.buser_upper;
    if (b.graph.variant != Variant::Schreier) {
      SpectralIntervalReport iv = spectral_interval_check(b.graph, spec, ch);
      numbers["interval_lower"] = iv.lower;
      numbers["interval_upper"] = iv.upper;
      numbers["min_ratio"] = iv.min_ratio;
      numbers["max_ratio"] = iv.max_ratio;
      if (!iv.witness.empty()) witnesses["interval"] = iv.witness;
      pass = pass && iv.pass;
    }
  } else if (kind == "loops") {
    BuiltGraph b = build_from_spec(need_param(p, "family"));
    std::uint64_t trace = loop_count_trace(b.graph);
    numbers = {{"loop_count", trace}, {"loop_vertices", loop_vertex_count(b.graph)}};
    if (b.group && b.set && b.graph.variant != Variant::Schreier) {
      std::uint64_t alg = loop_count_algebraic(b.graph.variant, b.group, *b.set,
                                               b.sigma ? &*b.sigma : nullptr);
      numbers["loop_count_algebraic"] = alg;
      pass = alg == trace;
    }
  } else if (kind == "walks") {
    BuiltGraph b = build_from_spec(need_param(p, "family"));
    int length = parse_int(need_param(p, "length"), "walk length");
    numbers = {{"length", length},
               {"vertices_with_closed_walk", closed_walk_vertex_count(b.graph, length)}};
  } else if (kind == "fingerprint") {
    BuiltGraph b = build_from_spec(need_param(p, "family"));
    Fingerprint f = fingerprint(b.graph);
    numbers = {{"spectrum_digest", f.spectrum_digest},
               {"loop_count", f.loop_count},
               {"loop_vertices", f.loop_vertices},
               {"diameter", f.diameter == kNoDiameter ? Json(nullptr) : Json(f.diameter)},
               {"bipartite", f.bipartite},
               {"walk3_histogram", f.walk3_histogram}};
    if (auto famj = param(p, "family-j")) {
      Fingerprint fj = fingerprint(build_from_spec(*famj).graph);
      numbers["equal"] = f == fj;
      numbers["digest_j"] = fj.spectrum_digest;
    }
  } else if (kind == "gssigma") {
    GroupPtr g = parse_group(need_param(p, "group"));
    ConnectionMultiset s = parse_connection(g, need_param(p, "set"));
    GroupMap sigma = parse_sigma(g, need_param(p, "sigma"));
    GsSigmaReport r = compute_gs_sigma(g, s, sigma);
    numbers = {{"subgroup_order", r.subgroup.size()},
               {"fixed_subgroup_order", r.fixed_subgroup_order},
               {"ss_inv_size", r.ss_inv_size},
               {"min_class_size", r.min_class_size},
               {"contains_fixed", r.contains_fixed},
               {"equals_fixed", r.equals_fixed},
               {"size_hypothesis", r.size_hypothesis}};
    witnesses = {{"subgroup", r.subgroup}};
    pass = r.contains_fixed && (!r.size_hypothesis || r.equals_fixed);
  } else if (kind == "uniformity") {
    std::string fam = need_param(p, "fam");
    if (fam != "sym" && fam != "alt") throw UsageError("--fam must be sym or alt");
    UniformityTable t = uniformity_table(fam == "alt" ? Family::Alternating : Family::Symmetric,
                                         parse_int(need_param(p, "k"), "k"),
                                         parse_int(need_param(p, "n-lo"), "n-lo"),
                                         parse_int(need_param(p, "n-hi"), "n-hi"));
    Json rows = Json::array();
    for (const UniformityRow& row : t.rows)
      rows.push_back({{"n", row.degree},
                      {"order", row.group_order},
                      {"m", row.m},
                      {"m_ratio", row.m_ratio},
                      {"dims", row.dims},
                      {"dim_ratios", row.dim_ratios}});
    numbers = {{"k", t.k}, {"alternating", t.alternating}, {"rows", std::move(rows)}};
    numbers["ratio_monotone"] = t.ratio_monotone;
    pass = t.ratio_monotone;
  } else {
    throw UsageError("unknown analysis kind '" + kind + "'");
  }

  emit_json(p, os, analysis_json(kind, inputs, numbers, witnesses, pass));
  return pass ? 0 : 1;
}

inline int run_command(const std::string& command, const Params& p, const RunConfig& cfg,
                       std::ostream& os);

inline int cmd_sweep(const Params& p, const RunConfig& cfg, std::ostream& os) {
  Json manifest = parse_json(read_file(need_param(p, "manifest")), "manifest");
  std::vector<SweepJob> jobs = parse_manifest(manifest);
  Json rows = Json::array();
  bool all_ok = true;
  std::ostringstream sink;  // job artifacts are not the sweep's output

  for (std::size_t idx = 0; idx < jobs.size(); ++idx) {
    const SweepJob& job = jobs[idx];
    Params jp;
    if (job.args.is_object())
      for (auto it = job.args.begin(); it != job.args.end(); ++it) {
        const Json& v = it.value();
        if (v.is_string())
          jp[it.key()] = v.get<std::string>();
        else if (v.is_boolean())
          jp[it.key()] = v.get<bool>() ? "1" : "0";
        else if (v.is_number_integer())
          jp[it.key()] = std::to_string(v.get<std::int64_t>());
        else if (v.is_number_unsigned())
          jp[it.key()] = std::to_string(v.get<std::uint64_t>());
        else if (v.is_number_float())
          jp[it.key()] = format_g17(v.get<double>());
        else
          throw UsageError("job arguments must be scalars");
      }

    int code = 0;
    std::string error;
    try {
      if (job.command == "sweep") throw UsageError("sweeps do not nest");
      code = run_command(job.command, jp, cfg, sink);
    } catch (const UsageError& e) {
      code = 2;
      error = e.what();
    } catch (const MathError& e) {
      code = 1;
      error = e.what();
    } catch (const std::exception& e) {
      code = 1;
      error = e.what();
    }

    bool expected = job.expected.value_or(true);
    bool ok = (code == 0) == expected;
    all_ok = all_ok && ok;
    Json row = {{"index", idx},
                {"command", job.command},
                {"exit", code},
                {"pass", code == 0},
                {"expected", expected},
                {"ok", ok}};
    if (!error.empty()) row["error"] = error;
    rows.push_back(std::move(row));
  }

  Json summary = {{"kind", "sweep"},
                  {"jobs", std::move(rows)},
                  {"workers", cfg.effective_workers()},
                  {"pass", all_ok}};
  emit_json(p, os, summary);
  return all_ok ? 0 : 1;
}

inline int run_command(const std::string& command, const Params& p, const RunConfig& cfg,
                       std::ostream& os) {
  if (command == "build") return cmd_build(p, cfg, os);
  if (command == "spectrum") return cmd_spectrum(p, cfg, os);
  if (command == "certify") return cmd_certify(p, cfg, os);
  if (command == "analyze") return cmd_analyze(p, cfg, os);
  if (command == "sweep") return cmd_sweep(p, cfg, os);
  throw UsageError("unknown command '" + command + "'");
}

/// Uniform exit-code contract: 0 pass, 1 mathematical or hypothesis failure,
/// 2 malformed input.
inline int run_protected(const std::string& command, const Params& p, const RunConfig& cfg,
                         std::ostream& os, std::ostream& err) {
  try {
    return run_command(command, p, cfg, os);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    err << "math error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace cgl
