// tfag: command-line front end.
//
// Exit codes: 0 definite answer, 2 unknown or scope-limited answer, 1 error.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "tfag/tfag.hpp"

using json = nlohmann::ordered_json;
using namespace tfag;

namespace {

struct Options {
  std::vector<std::string> files;
  std::string basis, basis2, partition, partition2, vector, matrix, u, w, profile = "mixed";
  unsigned height = 2;
  std::size_t max_blocks = 2;
  std::size_t max_vectors = 64;
  std::size_t max_bases = 20000;
  unsigned threads = 1;
  unsigned oracle_bound = 4;
  bool oracle = false;
  bool as_json = false;
  std::uint64_t seed = 1;
  std::size_t count = 20;
  std::size_t max_rank = 3;
};

// Text lines and a JSON document built side by side.
struct Report {
  std::vector<std::string> lines;
  json doc = json::object();
  int exit_code = 0;

  void line(std::string s) { lines.push_back(std::move(s)); }
};

std::string yes_no(bool b) { return b ? "true" : "false"; }

json group_json(const GroupRep& g) {
  json gens = json::array();
  for (auto& gen : g.generators()) gens.push_back({{"vector", format_tuple(gen.v)}, {"inv", gen.s.str()}});
  return {{"name", g.name()}, {"ambient", g.ambient()}, {"rank", g.rank()}, {"description", describe(g)},
          {"generators", gens}};
}

json residues_json(const Residues& r) {
  json a = json::array();
  for (auto& x : r) a.push_back(x.get_str());
  return a;
}

json quotient_json(const QuotientDescription& q) {
  if (!q.finite()) {
    auto& w = q.witness();
    return {{"kind", "infinite_torsion"}, {"prime", w.prime}, {"direction", format_tuple(w.direction)},
            {"text", q.str()}};
  }
  const FiniteQuotient& f = q.quotient();
  json factors = json::array();
  for (auto& d : f.invariant_factors) factors.push_back(d.get_str());
  json images = json::array();
  for (auto& r : f.generator_images) images.push_back(residues_json(r));
  return {{"kind", "finite"}, {"text", f.str()}, {"order", f.order().get_str()}, {"invariant_factors", factors},
          {"generator_images", images}};
}

void quotient_lines(Report& rep, const GroupRep& g, const QuotientDescription& q, const std::string& label) {
  rep.line(label + q.str());
  if (!q.finite()) return;
  const FiniteQuotient& f = q.quotient();
  if (f.trivial()) return;
  for (std::size_t i = 0; i < g.generators().size(); ++i)
    rep.line("  image of " + format_tuple(g.generators()[i].v) + ": " + format_residues(f.generator_images[i]));
}

json decomposition_json(const DecompositionRecord& d) {
  json a = json::array();
  for (std::size_t i = 0; i < d.summands.size(); ++i)
    a.push_back({{"summand", describe(d.summands[i])}, {"rank", d.summands[i].rank()},
                 {"flag", to_string(d.flags[i])}});
  return a;
}

void decomposition_lines(Report& rep, const DecompositionRecord& d, const std::string& indent) {
  for (std::size_t i = 0; i < d.summands.size(); ++i)
    rep.line(indent + describe(d.summands[i]) + "  [" + to_string(d.flags[i]) + "]");
}

std::string basis_str(const Basis& b) {
  std::string s;
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? ";" : "") + format_tuple(b[i]);
  return s;
}

json scope_json(const Options& o) {
  return {{"height", o.height}, {"max_vectors", o.max_vectors}, {"max_bases", o.max_bases}};
}

SearchOptions search_options(const Options& o) {
  SearchOptions s;
  s.height = o.height;
  s.max_vectors = o.max_vectors;
  s.max_bases = o.max_bases;
  s.threads = o.threads;
  return s;
}

GroupRep group_arg(const Options& o, std::size_t i) {
  if (o.files.size() <= i) throw std::invalid_argument("missing group file argument");
  return load_group(o.files[i]);
}

Basis basis_arg(const std::string& text, const char* flag) {
  if (text.empty()) throw std::invalid_argument(std::string("missing ") + flag);
  return parse_vector_list(text);
}

RationalVector vector_arg(const Options& o) {
  if (o.vector.empty()) throw std::invalid_argument("missing --vector");
  return parse_vector(o.vector);
}

// ---------------------------------------------------------------------------
// commands

void cmd_member(const Options& o, Report& rep) {
  GroupRep g = group_arg(o, 0);
  RationalVector x = vector_arg(o);
  bool m = member(g, x);
  rep.doc["group"] = group_json(g);
  rep.doc["vector"] = format_tuple(x);
  rep.doc["member"] = m;
  rep.line("member " + format_tuple(x) + " in " + g.name() + ": " + yes_no(m));
  if (o.oracle) {
    bool b = brute_force_member(g, x, o.oracle_bound);
    bool agree = oracle_member_agrees(g, x, o.oracle_bound);
    rep.doc["oracle"] = {{"bound", o.oracle_bound}, {"member", b}, {"agrees", agree}};
    rep.line("oracle (bound " + std::to_string(o.oracle_bound) + "): " + yes_no(b) + (agree ? "" : "  MISMATCH"));
    if (!agree) rep.exit_code = 1;
  }
}

void cmd_type(const Options& o, Report& rep) {
  GroupRep g = group_arg(o, 0);
  RationalVector x = vector_arg(o);
  DivisibilityType t = element_type(g, x);
  rep.doc["group"] = group_json(g);
  rep.doc["vector"] = format_tuple(x);
  rep.doc["type"] = t.str();
  rep.line("type of " + format_tuple(x) + " in " + g.name() + ": " + t.str());
}

void cmd_purify(const Options& o, Report& rep) {
  GroupRep g = group_arg(o, 0);
  std::vector<RationalVector> vs = o.vector.empty() ? basis_arg(o.basis, "--vector or --basis")
                                                    : std::vector<RationalVector>{parse_vector(o.vector)};
  for (auto& v : vs) g.require_ambient(v.size(), "purify");
  GroupRep r = purify(g, Subspace::span(vs, g.ambient()));
  rep.doc["group"] = group_json(g);
  json span = json::array();
  for (auto& v : vs) span.push_back(format_tuple(v));
  rep.doc["span"] = span;
  rep.doc["pure_subgroup"] = group_json(r);
  rep.line("pure subgroup: " + describe(r));
  if (o.oracle) {
    if (vs.size() != 1) throw std::invalid_argument("--oracle needs a single --vector");
    bool agree = oracle_purify_agrees(g, vs[0], o.oracle_bound);
    OraclePure op = brute_force_purify(g, vs[0], o.oracle_bound);
    std::string od = is_zero(op.generator) ? "0" : DivisibilityType(1, op.primes).str() + "*" + format_tuple(op.generator);
    rep.doc["oracle"] = {{"bound", o.oracle_bound}, {"pure_subgroup", od}, {"agrees", agree}};
    rep.line("oracle (bound " + std::to_string(o.oracle_bound) + "): " + od + (agree ? "" : "  MISMATCH"));
    if (!agree) rep.exit_code = 1;
  }
}

void cmd_basis_check(const Options& o, Report& rep) {
  GroupRep g = group_arg(o, 0);
  Basis b = basis_arg(o.basis, "--basis");
  bool ok = is_basis(g, b);
  rep.doc["group"] = group_json(g);
  rep.doc["basis"] = basis_str(b);
  rep.doc["is_basis"] = ok;
  rep.line("basis " + basis_str(b) + ": " + yes_no(ok));
}

void cmd_minmul(const Options& o, Report& rep) {
  GroupRep g = group_arg(o, 0);
  Basis b = basis_arg(o.basis, "--basis");
  Integer m = minimal_multiplier(g, b);
  rep.doc["group"] = group_json(g);
  rep.doc["basis"] = basis_str(b);
  rep.doc["minimal_multiplier"] = m.get_str();
  rep.line("minimal multiplier: " + m.get_str());
}

void cmd_brep(const Options& o, Report& rep) {
  GroupRep g = group_arg(o, 0);
  Basis b = basis_arg(o.basis, "--basis");
  RationalVector a = vector_arg(o);
  BRepresentation r = b_representation(g, b, a);
  json n = json::array();
  std::string ns;
  for (std::size_t i = 0; i < r.n.size(); ++i) {
    n.push_back(r.n[i].get_str());
    ns += (i ? "," : "") + r.n[i].get_str();
  }
  rep.doc["group"] = group_json(g);
  rep.doc["basis"] = basis_str(b);
  rep.doc["vector"] = format_tuple(a);
  rep.doc["k"] = r.k.get_str();
  rep.doc["n"] = n;
  rep.line("k = " + r.k.get_str() + ", n = (" + ns + ")");
}

void cmd_split(const Options& o, Report& rep) {
  GroupRep g = group_arg(o, 0);
  Basis b = basis_arg(o.basis, "--basis");
  if (!is_basis(g, b)) throw std::invalid_argument("not a basis of " + g.name());
  rep.doc["group"] = group_json(g);
  rep.doc["basis"] = basis_str(b);
  if (!o.partition.empty()) {
    Partition p = parse_partition(o.partition);
    QuasiSplitReport r = quasi_split_check(g, b, p);
    rep.doc["partition"] = format_partition(p);
    rep.doc["verdict"] = to_string(r.kind);
    rep.doc["blocks"] = decomposition_json(r.blocks);
    rep.doc["quotient"] = quotient_json(r.quotient);
    rep.line("partition " + format_partition(p) + ": " + to_string(r.kind));
    decomposition_lines(rep, r.blocks, "  block hull ");
    quotient_lines(rep, g, r.quotient, "quotient by block hulls: ");
    return;
  }
  json parts = json::array();
  bool any = false;
  for (auto& p : set_partitions(b.size(), o.max_blocks)) {
    bool s = partition_splits(g, b, p);
    any = any || s;
    parts.push_back({{"partition", format_partition(p)}, {"splits", s}});
    rep.line("partition " + format_partition(p) + ": " + (s ? "splits" : "does not split"));
  }
  Partition fin = finest_splitting_partition(g, b);
  rep.doc["partitions"] = parts;
  rep.doc["finest_splitting_partition"] = format_partition(fin);
  rep.line("finest splitting partition: " + format_partition(fin));
  if (!any) {
    DecompositionRecord hull = pure_hull_sum(g, b);
    QuotientDescription q = index_and_quotient(g, hull.sum(g.ambient()));
    rep.doc["defect_quotient"] = quotient_json(q);
    quotient_lines(rep, g, q, "no splitting partition; G/(B)_*: ");
  }
}

void cmd_decompose(const Options& o, Report& rep) {
  GroupRep g = group_arg(o, 0);
  std::vector<Basis> given;
  if (!o.basis.empty()) given.push_back(parse_vector_list(o.basis));
  DecompositionSearch ds = complete_decomposition_search(g, given, search_options(o));
  json found = json::array();
  rep.line("complete decompositions of " + g.name() + " (height " + std::to_string(o.height) + "): " +
           std::to_string(ds.found.size()));
  for (std::size_t i = 0; i < ds.found.size(); ++i) {
    auto& f = ds.found[i];
    found.push_back({{"basis", basis_str(f.basis)}, {"partition", format_partition(f.partition)},
                     {"summands", decomposition_json(f.decomposition)}});
    rep.line("#" + std::to_string(i + 1) + " basis " + basis_str(f.basis) + " partition " + format_partition(f.partition));
    decomposition_lines(rep, f.decomposition, "  ");
  }
  rep.doc["group"] = group_json(g);
  rep.doc["scope"] = scope_json(o);
  rep.doc["bases_examined"] = ds.bases_examined;
  rep.doc["exhaustive"] = ds.exhaustive;
  rep.doc["decompositions"] = found;
  rep.line("bases examined: " + std::to_string(ds.bases_examined) + (ds.exhaustive ? "" : " (capped)"));
  if (ds.found.empty()) rep.exit_code = 2;
}

DecompositionRecord decomposition_arg(const GroupRep& g, const std::string& basis, const std::string& part,
                                      const char* flag) {
  Basis b = basis_arg(basis, flag);
  Partition p = part.empty() ? finest_splitting_partition(g, b) : parse_partition(part);
  SplitCheck sc = check_splitting_partition(g, b, p);
  if (!sc.splits) throw std::invalid_argument("partition " + format_partition(p) + " of " + basis + " does not split");
  return *sc.decomposition;
}

void cmd_iso(const Options& o, Report& rep) {
  GroupRep g = group_arg(o, 0);
  std::vector<std::pair<std::string, DecompositionRecord>> ds;
  if (!o.basis.empty()) {
    ds.push_back({"D1", decomposition_arg(g, o.basis, o.partition, "--basis")});
    ds.push_back({"D2", decomposition_arg(g, o.basis2, o.partition2, "--basis2")});
  } else {
    DecompositionSearch s = complete_decomposition_search(g, {}, search_options(o));
    for (std::size_t i = 0; i < s.found.size(); ++i) ds.push_back({"#" + std::to_string(i + 1), s.found[i].decomposition});
    rep.doc["scope"] = scope_json(o);
  }
  rep.doc["group"] = group_json(g);
  json pairs = json::array();
  bool unknown = false;
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = i + 1; j < ds.size(); ++j) {
      IsoResult r = decompositions_isomorphic(g, ds[i].second, ds[j].second);
      json entry = {{"first", ds[i].first}, {"second", ds[j].first}, {"verdict", to_string(r.verdict)}, {"reason", r.reason}};
      std::string text = ds[i].first + " vs " + ds[j].first + ": " + to_string(r.verdict) + " (" + r.reason + ")";
      if (r.verdict == IsoVerdict::Yes) {
        AssembledAutomorphism aa = automorphism_from_summand_isos(g, r);
        entry["automorphism"] = format_matrix(aa.matrix);
        entry["automorphism_verified"] = aa.verified;
        text += ", automorphism " + format_matrix(aa.matrix) + (aa.verified ? " verified" : " NOT verified");
      }
      unknown = unknown || r.verdict == IsoVerdict::Unknown;
      pairs.push_back(entry);
      rep.line(text);
    }
  rep.doc["comparisons"] = pairs;
  if (ds.size() < 2) rep.line("fewer than two decompositions to compare");
  if (unknown || ds.size() < 2) rep.exit_code = 2;
}

void cmd_aut_check(const Options& o, Report& rep) {
  GroupRep g = group_arg(o, 0);
  if (o.matrix.empty()) throw std::invalid_argument("missing --matrix");
  RationalMatrix m = parse_matrix(o.matrix);
  bool a = automorphism_check(g, m);
  rep.doc["group"] = group_json(g);
  rep.doc["matrix"] = format_matrix(m);
  rep.doc["automorphism"] = a;
  rep.line("automorphism: " + yes_no(a));
  auto qa = quasi_automorphism_check(g, m);
  rep.doc["quasi_automorphism"] = qa ? json{{"r", qa->r.get_str()}, {"automorphism", format_matrix(qa->automorphism)}} : json(nullptr);
  if (qa) rep.line("quasi-automorphism: r = " + qa->r.get_str() + ", M/r = " + format_matrix(qa->automorphism));
  else rep.line("quasi-automorphism: none");
}

void cmd_quasi_eq(const Options& o, Report& rep) {
  GroupRep h = group_arg(o, 0), g = group_arg(o, 1);
  auto r = quasi_equal_strict(h, g);
  rep.doc["left"] = group_json(h);
  rep.doc["right"] = group_json(g);
  rep.doc["r"] = r ? json(r->get_str()) : json(nullptr);
  rep.line(r ? "r * " + h.name() + " = " + g.name() + " with r = " + r->get_str() : "no r with r * " + h.name() + " = " + g.name());
}

void cmd_commensurable(const Options& o, Report& rep) {
  GroupRep h = group_arg(o, 0), g = group_arg(o, 1);
  auto c = commensurable(h, g);
  rep.doc["left"] = group_json(h);
  rep.doc["right"] = group_json(g);
  rep.doc["commensurable"] = c ? json{{"a", c->a.get_str()}, {"b", c->b.get_str()}} : json(nullptr);
  rep.line(c ? "commensurable: (" + c->a.get_str() + ", " + c->b.get_str() + ")  [a*" + h.name() + " <= " + g.name() +
                   ", b*" + g.name() + " <= " + h.name() + "]"
             : "not commensurable");
}

json jonsson_json(const JonssonBasis& a) {
  json s = json::array();
  for (std::size_t i = 0; i < a.summands.size(); ++i)
    s.push_back({{"summand", describe(a.summands[i])}, {"rank", a.summands[i].rank()}, {"flag", to_string(a.flags[i])}});
  json sig = json::array();
  for (auto& x : a.signatures()) sig.push_back(x.str());
  return {{"summands", s}, {"signatures", sig}, {"quotient", quotient_json(QuotientDescription{a.quotient_map})}};
}

void jonsson_lines(Report& rep, const JonssonBasis& a) {
  for (std::size_t i = 0; i < a.summands.size(); ++i)
    rep.line("  " + describe(a.summands[i]) + "  [" + to_string(a.flags[i]) + "]");
  quotient_lines(rep, a.group, QuotientDescription{a.quotient_map}, "  quotient: ");
}

JonssonBasis jonsson_arg(const GroupRep& g, const Options& o) {
  if (!o.basis.empty()) {
    Basis b = parse_vector_list(o.basis);
    Partition p;
    if (o.partition.empty())
      for (std::size_t i = 0; i < b.size(); ++i) p.push_back({i});
    else
      p = parse_partition(o.partition);
    validate_partition(p, b.size());
    std::vector<GroupRep> cands;
    for (auto& block : p) cands.push_back(purify(g, Subspace::span(block_vectors(b, block), g.ambient())));
    return jonsson_basis_from_summands(g, cands);
  }
  RegulatingResult rr = regulating_search(g, search_options(o));
  if (!rr.best) throw std::invalid_argument("no Jonsson basis found within the search bounds");
  return *rr.best;
}

void cmd_jonsson(const Options& o, Report& rep) {
  GroupRep g = group_arg(o, 0);
  rep.doc["group"] = group_json(g);
  try {
    JonssonBasis a = jonsson_arg(g, o);
    rep.doc["jonsson_basis"] = jonsson_json(a);
    rep.line("Jonsson basis of " + g.name() + ":");
    jonsson_lines(rep, a);
    bool asserted = false;
    for (auto f : a.flags) asserted = asserted || f == JonssonFlag::Asserted;
    if (asserted) rep.exit_code = 2;
  } catch (const infinite_index_error& e) {
    rep.doc["jonsson_basis"] = nullptr;
    rep.doc["witness"] = {{"prime", e.witness.prime}, {"direction", format_tuple(e.witness.direction)}};
    rep.line(std::string("not a Jonsson basis: ") + e.what());
  }
}

void cmd_regulating(const Options& o, Report& rep) {
  GroupRep g = group_arg(o, 0);
  RegulatingResult rr = regulating_search(g, search_options(o));
  rep.doc["group"] = group_json(g);
  rep.doc["scope"] = scope_json(o);
  rep.doc["exhaustive"] = rr.exhaustive;
  rep.doc["subsets_examined"] = rr.subsets_examined;
  rep.doc["jonsson_bases_found"] = rr.found.size();
  if (!rr.best) {
    rep.doc["regulating"] = nullptr;
    rep.line("no Jonsson basis found (height " + std::to_string(o.height) + ")");
    rep.exit_code = 2;
    return;
  }
  rep.doc["index"] = rr.index.get_str();
  rep.doc["regulating"] = jonsson_json(*rr.best);
  rep.line("least index found: " + rr.index.get_str() + (rr.exhaustive ? " (exhaustive at height " : " (capped at height ") +
           std::to_string(o.height) + ")");
  jonsson_lines(rep, *rr.best);
  rep.line("Jonsson bases found: " + std::to_string(rr.found.size()));
  if (!rr.exhaustive) rep.exit_code = 2;
}

void cmd_lift(const Options& o, Report& rep) {
  GroupRep g = group_arg(o, 0);
  JonssonBasis a = jonsson_arg(g, o);
  rep.doc["group"] = group_json(g);
  rep.doc["jonsson_basis"] = jonsson_json(a);
  rep.line("Jonsson basis with quotient " + a.quotient().str());
  if (o.u.empty() && o.w.empty()) {
    json ds = json::array();
    for (auto& r : unrefinable_quotient_decompositions(a)) {
      json imgs = json::array();
      std::string text = "unrefinable lift " + format_partition(r.grouping) + ":";
      for (std::size_t i = 0; i < r.lift.summands.size(); ++i) {
        imgs.push_back({{"summand", describe(r.lift.summands[i])}, {"image_order", r.images[i].order().get_str()}});
        text += " " + describe(r.lift.summands[i]) + " (image order " + r.images[i].order().get_str() + ")";
      }
      ds.push_back({{"grouping", format_partition(r.grouping)}, {"blocks", imgs}});
      rep.line(text);
    }
    rep.doc["unrefinable"] = ds;
    return;
  }
  auto us = parse_residues(o.u), ws = parse_residues(o.w);
  LiftReport r = lift_quotient_decomposition(a, us, ws);
  rep.doc["U"] = o.u;
  rep.doc["W"] = o.w;
  rep.doc["lifted"] = r.lifted;
  rep.doc["groupings_tried"] = r.groupings_tried;
  if (r.lifted) {
    rep.doc["grouping"] = format_partition(r.grouping);
    rep.doc["lift"] = decomposition_json(r.lift);
    rep.line("lifted by grouping " + format_partition(r.grouping) + ":");
    decomposition_lines(rep, r.lift, "  ");
  } else {
    rep.line("no grouping of the Jonsson summands lifts U + W (" + std::to_string(r.groupings_tried) + " groupings tried)");
  }
}

void cmd_quotient(const Options& o, Report& rep) {
  GroupRep g = group_arg(o, 0), a = group_arg(o, 1);
  QuotientDescription q = index_and_quotient(g, a);
  rep.doc["group"] = group_json(g);
  rep.doc["subgroup"] = group_json(a);
  rep.doc["quotient"] = quotient_json(q);
  quotient_lines(rep, g, q, "");
}

void cmd_si_check(const Options& o, Report& rep) {
  GroupRep g = group_arg(o, 0);
  Basis b = basis_arg(o.basis, "--basis");
  SIReport r = property_si_check(g, b);
  json att = json::array();
  for (auto& a : r.attempts) att.push_back({{"partition", format_partition(a.partition)}, {"splits", a.splits}});
  rep.doc["group"] = group_json(g);
  rep.doc["basis"] = basis_str(b);
  rep.doc["hull"] = decomposition_json(r.hull);
  rep.doc["quotient"] = quotient_json(r.quotient);
  rep.doc["split_attempts"] = att;
  rep.doc["verdict"] = r.holds ? "SI-holds" : "SI-fails";
  rep.doc["reasons"] = r.reasons;
  rep.line(std::string("property SI for basis ") + basis_str(b) + ": " + (r.holds ? "holds" : "fails"));
  quotient_lines(rep, g, r.quotient, "  G/(B)_*: ");
  for (auto& a : r.attempts) rep.line("  partition " + format_partition(a.partition) + ": " + (a.splits ? "splits" : "does not split"));
  for (auto& s : r.reasons) rep.line("  reason: " + s);
}

void cmd_si_search(const Options& o, Report& rep) {
  GroupRep g = group_arg(o, 0);
  WitnessSearch ws = strong_decomposability_witness_search(g, search_options(o));
  auto cert = typeset_obstruction_certificate(g);
  rep.doc["group"] = group_json(g);
  rep.doc["scope"] = scope_json(o);
  rep.doc["bases_examined"] = ws.bases_examined;
  rep.doc["exhaustive"] = ws.exhaustive;
  if (ws.witness) {
    auto& w = *ws.witness;
    rep.doc["search"] = {{"result", "QuasiDecomposition"}, {"basis", basis_str(w.basis)}, {"partition", format_partition(w.partition)},
                         {"kind", to_string(w.kind)}, {"quotient", quotient_json(w.quotient)}};
    rep.line("witness: basis " + basis_str(w.basis) + " partition " + format_partition(w.partition) + " " +
             to_string(w.kind) + ", quotient " + w.quotient.str());
    rep.line("certified: not strongly indecomposable");
  } else {
    rep.doc["search"] = {{"result", "NoWitnessFound"}};
    rep.line("no witness up to height " + std::to_string(o.height) + " (" + std::to_string(ws.bases_examined) + " bases)");
    rep.exit_code = 2;
  }
  if (cert) {
    json types = json::array();
    std::string ts;
    for (std::size_t i = 0; i < cert->types.size(); ++i) {
      std::string t = DivisibilityType(1, cert->types[i].primes).str();
      types.push_back({{"type", t}, {"witness", format_tuple(cert->types[i].witness)}});
      ts += (i ? ", " : "") + t;
    }
    rep.doc["certificate"] = {{"kind", "typeset obstruction"}, {"types", types}};
    rep.line("typeset obstruction: pairwise incomparable types {" + ts + "}");
    if (!ws.witness) {
      rep.line("certified: strongly indecomposable");
      rep.exit_code = 0;
    } else {
      rep.exit_code = 1;
      rep.line("internal error: certificate and witness disagree");
    }
  } else {
    rep.doc["certificate"] = nullptr;
  }
}

void cmd_verify(const Options& o, Report& rep) {
  std::vector<CorpusGroup> groups;
  if (!o.files.empty()) {
    for (auto& f : o.files) groups.push_back({load_group(f), {}});
  } else {
    CorpusOptions co;
    co.max_rank = o.max_rank;
    Profile p = parse_profile(o.profile);
    for (std::size_t i = 0; i < o.count; ++i) groups.push_back(generate(p, o.seed + i, co));
  }
  SearchOptions so = search_options(o);
  auto tallies = parallel_map(groups.size(), o.threads, [&](std::size_t i) {
    std::vector<PropertyTally> t(6);
    const CorpusGroup& cg = groups[i];
    const GroupRep& g = cg.group;
    CorpusRng rng(o.seed * 7919 + i);
    check_oracle_agreement(cg, o.seed + i, 20, 5, o.oracle_bound, t[0]);
    for (int k = 0; k < 2; ++k)
      if (auto b = random_basis(g, rng)) check_basis_laws(g, *b, rng, t[1]);
    for (auto& a : sample_automorphisms(cg, rng, 3)) check_automorphism_laws(g, a, rng, t[2]);
    if (g.rank() <= 3) check_decomposition_isomorphisms(g, complete_decomposition_search(g, {}, so), t[2]);
    check_pure_quasi_equal(g, rng, t[3]);
    check_quasi_pair(g, scale_group(g, Rational(rng.range(1, 6))), t[3]);
    if (g.rank() <= 3) check_jonsson_invariants(g, regulating_search(g, so), t[4]);
    check_si_soundness(g, so, t[5]);
    return t;
  });
  static const char* names[] = {"oracle agreement", "bases", "automorphisms", "quasi-equality", "Jonsson invariants",
                                "strong indecomposability"};
  json out = json::array();
  bool ok = true;
  for (std::size_t k = 0; k < 6; ++k) {
    PropertyTally t;
    t.name = names[k];
    for (auto& ts : tallies) t.merge(ts[k]);
    ok = ok && t.ok();
    json fails = json::array();
    for (auto& f : t.failures)
      if (!f.empty()) fails.push_back(f);
    out.push_back({{"property", t.name}, {"checks", t.checks}, {"failures", t.failures.size()}, {"unknown", t.unknown},
                   {"examples", fails}});
    rep.line(std::string(t.ok() ? "PASS " : "FAIL ") + t.name + ": " + std::to_string(t.checks) + " checks, " +
             std::to_string(t.failures.size()) + " failures" + (t.unknown ? ", " + std::to_string(t.unknown) + " unknown" : ""));
    for (auto& f : t.failures)
      if (!f.empty()) rep.line("  " + f);
  }
  rep.doc["groups"] = groups.size();
  if (o.files.empty()) rep.doc["corpus"] = {{"profile", o.profile}, {"seed", o.seed}, {"count", o.count}, {"max_rank", o.max_rank}};
  rep.doc["properties"] = out;
  rep.line(std::to_string(groups.size()) + " groups verified");
  if (!ok) rep.exit_code = 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with torsion-free abelian groups of finite rank"};
  app.require_subcommand(1);
  Options o;

  struct Command {
    const char* name;
    const char* help;
    void (*run)(const Options&, Report&);
    int files;  // expected positional group files (-1: any number)
  };
  static const Command commands[] = {
      {"member", "decide membership of --vector", cmd_member, 1},
      {"type", "element type of --vector", cmd_type, 1},
      {"purify", "pure subgroup on the span of --vector or --basis", cmd_purify, 1},
      {"basis-check", "is --basis a basis of G", cmd_basis_check, 1},
      {"minmul", "minimal multiplier of --basis", cmd_minmul, 1},
      {"brep", "B-representation of --vector in --basis", cmd_brep, 1},
      {"split", "splitting partitions of --basis (or one --partition)", cmd_split, 1},
      {"decompose", "bounded search for complete decompositions", cmd_decompose, 1},
      {"iso", "compare decompositions up to isomorphism", cmd_iso, 1},
      {"aut-check", "is --matrix an automorphism (x -> x*M)", cmd_aut_check, 1},
      {"quasi-eq", "strict quasi-equality r*H = G", cmd_quasi_eq, 2},
      {"commensurable", "least (a, b) with aH <= G and bG <= H", cmd_commensurable, 2},
      {"jonsson", "Jonsson basis from --basis/--partition or the search", cmd_jonsson, 1},
      {"regulating", "least-index Jonsson basis within the search bounds", cmd_regulating, 1},
      {"lift", "lift a decomposition --U + --W of the Jonsson quotient", cmd_lift, 1},
      {"quotient", "G/A for A <= G of full span", cmd_quotient, 2},
      {"si-check", "property SI for --basis", cmd_si_check, 1},
      {"si-search", "search for a quasi-decomposition; typeset certificate", cmd_si_search, 1},
      {"verify", "property suite on group files or a generated corpus", cmd_verify, -1},
  };

  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    auto* files = sub->add_option("groups", o.files, "group description files");
    if (c.files > 0) files->expected(c.files)->required()->check(CLI::ExistingFile);
    sub->add_option("--basis", o.basis, "vectors \"(1,0);(0,1)\"");
    sub->add_option("--basis2", o.basis2, "second basis (iso)");
    sub->add_option("--partition", o.partition, "1-based blocks \"1,3|2\"");
    sub->add_option("--partition2", o.partition2, "second partition (iso)");
    sub->add_option("--vector", o.vector, "vector \"(1/2,1/2)\"");
    sub->add_option("--matrix", o.matrix, "matrix \"[[0,1],[1,0]]\" acting on row vectors");
    sub->add_option("--U", o.u, "residue generators of U");
    sub->add_option("--W", o.w, "residue generators of W");
    sub->add_option("--height", o.height, "coefficient height bound for searches")->capture_default_str();
    sub->add_option("--max-blocks", o.max_blocks, "largest number of blocks in partitions")->capture_default_str();
    sub->add_option("--max-vectors", o.max_vectors, "candidate vector cap")->capture_default_str();
    sub->add_option("--max-bases", o.max_bases, "candidate basis cap")->capture_default_str();
    sub->add_option("--threads", o.threads, "worker threads")->capture_default_str();
    sub->add_flag("--oracle", o.oracle, "cross-check with the brute-force oracle");
    sub->add_option("--oracle-bound", o.oracle_bound, "oracle exponent bound")->capture_default_str();
    sub->add_flag("--json", o.as_json, "machine-readable report");
    sub->add_option("--seed", o.seed, "corpus seed")->capture_default_str();
    sub->add_option("--profile", o.profile, "corpus profile: cd, acd, butler, mixed")->capture_default_str();
    sub->add_option("--count", o.count, "corpus size")->capture_default_str();
    sub->add_option("--max-rank", o.max_rank, "corpus rank bound")->capture_default_str();
    subs.push_back({sub, &c});
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const Command* cmd = nullptr;
  for (auto& [sub, c] : subs)
    if (sub->parsed()) cmd = c;
  Report rep;
  rep.doc["command"] = cmd->name;
  try {
    if (o.threads == 0) throw std::invalid_argument("--threads must be positive");
    cmd->run(o, rep);
  } catch (const std::exception& e) {
    if (o.as_json) {
      json err = {{"command", cmd->name}, {"error", e.what()}, {"exit_code", 1}};
      std::cout << err.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
  }
  rep.doc["exit_code"] = rep.exit_code;
  if (o.as_json) {
    std::cout << rep.doc.dump(2) << "\n";
  } else {
    for (auto& l : rep.lines) std::cout << l << "\n";
  }
  return rep.exit_code;
}
