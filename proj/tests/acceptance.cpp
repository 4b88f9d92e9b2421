// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance <cli> <samples-dir> <golden-dir>

#include <array>
#include <chrono>
#include <filesystem>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "fixtures.hpp"

using namespace tfag;
using namespace tfag::test;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Outcome& o, Clock::time_point start, double limit_s) {
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  bool ok = o.pass && secs < limit_s;
  if (!ok) ++failures;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (ok ? "PASS" : "FAIL") << " " << id << " " << title << ": " << o.detail << " [" << secs << " s, limit "
       << limit_s << " s]";
  if (o.pass && !ok) line << " (over time)";
  std::cout << line.str() << std::endl;
}

void absorb(Outcome& o, const PropertyTally& t) {
  o.detail += (o.detail.empty() ? "" : "; ") + t.name + " " + std::to_string(t.checks) + " checks";
  if (t.unknown) o.detail += ", " + std::to_string(t.unknown) + " unknown";
  if (!t.ok()) {
    o.pass = false;
    o.detail += ", " + std::to_string(t.failures.size()) + " failures (first: " + t.failures.front() + ")";
  }
}

SearchOptions height(unsigned h) {
  SearchOptions o;
  o.height = h;
  return o;
}

const Basis kB1{vec({1, 0}), vec({0, 1})};
const Basis kB2{vec({1, 0}), vec({1, 1})};

// ---------------------------------------------------------------------------

Outcome splitting_example() {
  Outcome o;
  GroupRep g = g1();
  auto exact = quasi_split_check(g, kB1, {{0}, {1}});
  bool b1 = exact.kind == QuasiSplitKind::ExactSplit && check_splitting_partition(g, kB1, {{0}, {1}}).splits;
  bool none = enumerate_splitting_partitions(g, kB2, 2).empty();
  auto defect = quasi_split_check(g, kB2, {{0}, {1}});
  bool infinite = defect.kind == QuasiSplitKind::NoSplit && !defect.quotient.finite();
  o.pass = b1 && none && infinite;
  o.detail = std::string("B1 ") + to_string(exact.kind) + ", B2 splitting partitions " + (none ? "none" : "found") +
             ", defect " + defect.quotient.str();
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  PropertyTally t{"oracle queries"};
  std::uint64_t seed = 1;
  for (auto& cg : corpus(200, 1)) check_oracle_agreement(cg, 1000 + seed++, 40, 10, 4, t);
  absorb(o, t);
  if (t.checks < 10000) {
    o.pass = false;
    o.detail += ", fewer than 10000 queries";
  }
  return o;
}

Outcome basis_suite() {
  Outcome o;
  PropertyTally t{"basis laws"};
  CorpusRng rng(2024);
  std::size_t sampled = 0, groups = 0;
  for (auto& cg : corpus(500, 1)) {
    ++groups;
    if (cg.group.rank() == 0) continue;
    for (int k = 0; k < 2; ++k)
      if (auto b = random_basis(cg.group, rng)) {
        check_basis_laws(cg.group, *b, rng, t);
        ++sampled;
      }
  }
  absorb(o, t);
  o.detail = std::to_string(groups) + " groups, " + std::to_string(sampled) + " bases; " + o.detail;
  return o;
}

Outcome automorphism_suite() {
  Outcome o;
  PropertyTally laws{"automorphism laws"}, iso{"decomposition iso"}, orbit{"orbit transport"};
  CorpusRng rng(77);
  std::size_t autos = 0;
  auto groups = corpus(120, 1);
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& cg = groups[gi];
    auto ms = sample_automorphisms(cg, rng, 3);
    for (auto& m : ms) {
      check_automorphism_laws(cg.group, m, rng, laws);
      ++autos;
    }
    if (gi >= 60) continue;
    DecompositionSearch ds = complete_decomposition_search(cg.group, {}, height(2));
    check_decomposition_isomorphisms(cg.group, ds, iso);
    // an automorphism carrying D onto D alpha never meets a No verdict
    for (auto& m : ms)
      for (auto& f : ds.found) {
        DecompositionRecord moved = f.decomposition;
        for (auto& s : moved.summands) s = transform_group(s, m);
        IsoResult r = decompositions_isomorphic(cg.group, f.decomposition, moved);
        if (r.verdict == IsoVerdict::Unknown) ++orbit.unknown;
        else orbit.expect(r.verdict == IsoVerdict::Yes, "No verdict on an automorphic image in " + context(cg.group));
      }
  }
  o.detail = std::to_string(autos) + " automorphisms";
  absorb(o, laws);
  absorb(o, iso);
  absorb(o, orbit);
  if (autos < 200) {
    o.pass = false;
    o.detail += ", fewer than 200 automorphisms";
  }
  return o;
}

Outcome quasi_suite() {
  Outcome o;
  PropertyTally t{"quasi laws"};
  CorpusRng rng(5);
  auto groups = corpus(200, 1);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const GroupRep& g = groups[i].group;
    if (g.rank() == 0) continue;
    Rational r = detail::random_scale(rng, {2, 3, 5});
    check_quasi_pair(g, scale_group(g, r), t);
    check_quasi_pair(scale_group(g, r), g, t);
    const GroupRep& h = groups[(i + 4) % groups.size()].group;
    if (h.ambient() == g.ambient()) check_quasi_pair(g, h, t);
    if (auto b = random_basis(g, rng)) check_quasi_pair(free_group(*b, g.ambient()), g, t);
    check_pure_quasi_equal(g, rng, t);
  }
  absorb(o, t);
  GroupRep z2 = standard_lattice(2), zhalf = free_group({vec({1, 0}), vec({0, frac(1, 2)})}, 2);
  auto c = commensurable(z2, zhalf);
  bool divergence = c && !quasi_equal_strict(z2, zhalf);
  o.pass = o.pass && divergence;
  o.detail += std::string("; known divergence (Z^2, Z+1/2Z): commensurable ") +
              (c ? "(" + c->a.get_str() + "," + c->b.get_str() + ")" : std::string("absent")) + ", strict " +
              (quasi_equal_strict(z2, zhalf) ? "present" : "absent");
  return o;
}

Outcome jonsson_suite() {
  Outcome o;
  RegulatingResult r = regulating_search(g3(), height(4));
  bool g3ok = r.best && r.index == 2 && r.exhaustive && equal_groups(r.best->sum(), a3()) &&
              r.best->quotient().str() == "Z/2";
  o.detail = "G3 regulating index " + r.index.get_str() + (r.exhaustive ? " exhaustive" : " not exhaustive");
  if (!g3ok) o.pass = false;

  PropertyTally inv{"Jonsson invariants"}, lady{"Lady buckets h3 vs h4"};
  auto groups = corpus(80, 1);
  for (auto& cg : groups) {
    RegulatingResult rr = regulating_search(cg.group, height(2));
    check_jonsson_invariants(cg.group, rr, inv);
  }
  for (std::size_t i = 0; i < 40; ++i) {
    const GroupRep& g = groups[i].group;
    lady.expect(bucket_count(g, 3) == bucket_count(g, 4), "buckets still growing at height 4 in " + context(g));
  }
  absorb(o, inv);
  absorb(o, lady);
  return o;
}

Outcome si_suite() {
  Outcome o;
  GroupRep g = g2();
  auto cert = typeset_obstruction_certificate(g);
  std::vector<std::string> types;
  if (cert)
    for (auto& e : cert->types) types.push_back(element_type(g, e.witness).str());
  std::sort(types.begin(), types.end());
  bool cert_ok = types == std::vector<std::string>{"Z[2]", "Z[3]", "Z[5]"};

  CorpusRng rng(9);
  std::size_t holds = 0, sampled = 0;
  while (sampled < 50) {
    auto b = random_basis(g, rng);
    if (!b) continue;
    ++sampled;
    holds += property_si_check(g, *b).holds;
  }
  bool none = !strong_decomposability_witness_search(g, height(3)).witness;
  bool g3w = strong_decomposability_witness_search(g3(), height(2)).witness.has_value();
  bool g1w = strong_decomposability_witness_search(g1(), height(2)).witness.has_value();

  PropertyTally sound{"certificate soundness"};
  for (auto& cg : corpus(500, 1)) check_si_soundness(cg.group, height(2), sound);

  o.pass = cert_ok && holds == 50 && none && g3w && g1w;
  o.detail = std::string("G2 certificate ") + (cert_ok ? "{Z[2], Z[3], Z[5]}" : "wrong") + ", SI holds on " +
             std::to_string(holds) + "/" + std::to_string(sampled) + " bases, height-3 witness " +
             (none ? "none" : "found") + ", G3 witness " + (g3w ? "yes" : "no") + ", G1 witness " + (g1w ? "yes" : "no");
  absorb(o, sound);
  return o;
}

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

std::string run_cli(const std::string& cli, const std::string& dir, const std::string& args) {
  std::string cmd = "cd " + quote(dir) + " && " + quote(cli);
  std::istringstream words(args);
  for (std::string w; words >> w;) cmd += " " + quote(w);
  cmd += " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "popen failed";
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return out + "[exit " + std::to_string(WEXITSTATUS(status)) + "]\n";
}

Outcome golden_suite(const std::string& cli, const std::string& samples, const std::string& golden) {
  Outcome o;
  std::istringstream cases(read_file(golden + "/cases.txt"));
  std::size_t count = 0, bad = 0;
  std::string first;
  for (std::string line; std::getline(cases, line);) {
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    std::string name = line.substr(0, tab), args = line.substr(tab + 1);
    std::string want = read_file(golden + "/" + name + ".out");
    ++count;
    bool same = run_cli(cli, samples, args) == want && run_cli(cli, samples, args) == want &&
                run_cli(cli, samples, args + " --threads 4") == want;
    if (!same) {
      ++bad;
      if (first.empty()) first = name;
    }
  }
  o.pass = bad == 0 && count > 0;
  o.detail = std::to_string(count) + " golden cases x (2 runs + threads 4)";
  if (bad) o.detail += ", " + std::to_string(bad) + " differ (first: " + first + ")";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: acceptance <cli> <samples-dir> <golden-dir>\n";
    return 1;
  }
  struct Criterion {
    const char* title;
    double limit;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> cs{
      {"splitting example Z+Q", 1, splitting_example},
      {"oracle equivalence", 300, oracle_equivalence},
      {"bases suite", 600, basis_suite},
      {"automorphism suite", 600, automorphism_suite},
      {"quasi-equality suite", 600, quasi_suite},
      {"Jonsson suite", 600, jonsson_suite},
      {"strong indecomposability suite", 600, si_suite},
      {"CLI determinism", 600,
       [&] {
         namespace fs = std::filesystem;
         return golden_suite(fs::absolute(argv[1]), fs::absolute(argv[2]), fs::absolute(argv[3]));
       }},
  };
  for (std::size_t i = 0; i < cs.size(); ++i) {
    auto start = Clock::now();
    Outcome o;
    try {
      o = cs[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    report(static_cast<int>(i + 1), cs[i].title, o, start, cs[i].limit);
  }
  std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed" : "acceptance: all criteria pass")
            << std::endl;
  return failures ? 1 : 0;
}
