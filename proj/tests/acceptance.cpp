// Acceptance suite: one PASS/FAIL line per criterion.
//
//   ksumlab_acceptance [--jobs N] [--only i,j,...]

#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ksumlab/search.hpp"
#include "ksumlab/verify.hpp"
#include "support/oracles.hpp"

namespace {

using namespace ksumlab;
namespace kt = ksumlab::testing;

struct Outcome {
  bool pass = false;
  std::string detail;
};

unsigned g_jobs = 1;

VerifyOptions options(KSumEngine engine = default_engine()) {
  VerifyOptions o;
  o.jobs = g_jobs;
  o.engine = std::move(engine);
  return o;
}

std::string seconds(double ms) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << ms / 1000.0 << "s";
  return s.str();
}

// Collects failing report summaries.
struct Failures {
  std::vector<std::string> items;
  void add(const VerifyReport& r) {
    if (!r.pass())
      items.push_back(r.claim + "@" + r.group + " (" + std::to_string(r.violations_total) + " violations)");
  }
  bool empty() const { return items.empty(); }
  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < items.size() && i < 3; ++i) s += (s.empty() ? "" : "; ") + items[i];
    if (items.size() > 3) s += "; ...";
    return s;
  }
};

const std::vector<GroupSpec>& small_groups() {
  static const auto groups = kt::groups_of_order(2, 16);
  return groups;
}

Outcome oracle_equivalence() {
  Stopwatch clock;
  std::mt19937_64 rng(0);
  const auto& groups = small_groups();
  std::set<std::string> touched;
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto& g = groups[static_cast<std::size_t>(i) % groups.size()];
    const auto size = 1 + rng() % g.order();
    const auto a = kt::random_subset(g, size, rng);
    const auto k = rng() % (size + 1);
    touched.insert(g.str());
    if (ksum_set(a, k) != kt::brute_ksum(a, k)) ++mismatches;
  }
  const auto ms = clock.ms();
  return {mismatches == 0 && touched.size() == groups.size() && ms < 10'000,
          "1000 instances over " + std::to_string(touched.size()) + " groups, " + std::to_string(mismatches) +
              " mismatches, " + seconds(ms) + " (limit 10s)"};
}

// Stops at the first failing group when asked; a single failure decides the criterion.
Outcome theorem_main(const VerifyOptions& opt, bool stop_on_fail = false) {
  Stopwatch clock;
  Failures f;
  std::uint64_t checked = 0;
  std::size_t groups = 0;
  for (const auto& g : small_groups()) {
    const auto r = verify_theorem_main(g, opt);
    checked += r.checked;
    ++groups;
    f.add(r);
    if (stop_on_fail && !f.empty()) break;
  }
  const auto ms = clock.ms();
  return {f.empty() && ms < 300'000,
          std::to_string(groups) + " groups, " + std::to_string(checked) + " (A,k) instances, " + seconds(ms) +
              " (target 5min)" + (f.empty() ? "" : "; " + f.str())};
}

Outcome dds_bound(const VerifyOptions& opt) {
  Stopwatch clock;
  Failures f;
  std::uint64_t checked = 0;
  for (std::uint32_t p : {3U, 5U, 7U, 11U, 13U}) {
    const auto r = verify_dds_bound(p, opt);
    checked += r.checked;
    f.add(r);
  }
  const auto ms = clock.ms();
  return {f.empty() && ms < 60'000, "p in {3,5,7,11,13}, " + std::to_string(checked) + " (A,k) instances, " +
                                        seconds(ms) + " (limit 1min)" + (f.empty() ? "" : "; " + f.str())};
}

Outcome corollary_coset() {
  Failures f;
  std::uint64_t checked = 0, exceptions = 0;
  for (const auto& g : small_groups()) {
    const auto r = verify_corollary_coset(g, options());
    checked += r.checked;
    if (r.census.contains("all_but_one")) exceptions += r.census.at("all_but_one");
    f.add(r);
  }
  return {f.empty(), std::to_string(checked) + " (Q,k) instances, " + std::to_string(exceptions) +
                         " all-but-one exceptions" + (f.empty() ? "" : "; " + f.str())};
}

Outcome lemma_prob() {
  Stopwatch clock;
  const auto r = verify_lemma_prob(5, 30, options());
  int mismatches = 0, compared = 0;
  for (std::uint32_t n = 5; n <= 16; ++n)
    for (std::uint32_t a = 1; 2 * a <= n; ++a) {
      ++compared;
      if (exact_pair_cover_probability(a, n).value != kt::enumerated_pair_cover(a, n)) ++mismatches;
    }
  const auto ms = clock.ms();
  return {r.pass() && mismatches == 0 && ms < 10'000,
          std::to_string(r.checked) + " (a,n) bounds, " + std::to_string(r.violations_total) + " violations; " +
              std::to_string(compared) + " closed-form checks, " + std::to_string(mismatches) + " mismatches, " +
              seconds(ms) + " (limit 10s)"};
}

Outcome graphprop() {
  Stopwatch clock;
  Failures f;
  std::uint64_t part_i = 0;
  for (const auto& g : small_groups()) {
    if (g.order() < 5) continue;
    const auto r = verify_graphprop_induced(g, 5, 12, options());
    if (r.census.contains("part_i")) part_i += r.census.at("part_i");
    f.add(r);
  }
  std::vector<Coloring> corpus;
  corpus.push_back(induced_coloring(GroupSet::whole(GroupSpec({2, 2, 2}))));
  corpus.push_back(induced_coloring(GroupSet::whole(GroupSpec({2, 2, 2, 2}))));
  for (auto& c : round_robin_corpus({6, 8, 10, 12})) corpus.push_back(std::move(c));
  const auto r2 = verify_graphprop(corpus, "part-ii", options());
  f.add(r2);
  const auto in_part_ii = r2.census.contains("part_ii") ? r2.census.at("part_ii") : 0;
  return {f.empty() && in_part_ii == corpus.size(),
          "(i) " + std::to_string(part_i) + " rich colourings; (ii) " + std::to_string(in_part_ii) + "/" +
              std::to_string(corpus.size()) + " 1-factorizations, " +
              std::to_string(r2.census.contains("part_ii_subsets") ? r2.census.at("part_ii_subsets") : 0) +
              " subsets, " + seconds(clock.ms()) + (f.empty() ? "" : "; " + f.str())};
}

Outcome extremal() {
  Stopwatch clock;
  SearchOptions so;
  so.jobs = g_jobs;
  std::vector<std::string> bad;

  const auto z33 = max_nonfull_size(GroupSpec({3, 3}), 3, so);
  const bool two_cosets = z33.witness.size() == 6 && stabilizer(z33.witness).size() == 3;
  if (!(z33.max_nonfull_size == 6 && kt::brute_ksum(z33.witness, 3).size() == 7 && two_cosets))
    bad.push_back("Z3xZ3 witness");

  std::size_t threshold_groups = 0;
  for (std::uint64_t n = 3; n <= 21; n += 2)
    for (const auto& g : enumerate_abelian_groups(n)) {
      ++threshold_groups;
      if (!covering_threshold_check(g, options()).pass()) bad.push_back("threshold " + g.str());
    }

  const auto c2 = ck_of_order(9, 2, false, false, so);
  bool witnesses_ok = true;
  for (const auto& r : c2.classes) witnesses_ok = witnesses_ok && !kt::brute_ksum(r.witness, 2).is_whole();
  if (c2.value != Rational(5, 9) || !witnesses_ok) bad.push_back("c_2(9)=" + rational_str(c2.value));

  std::string detail = "Z3xZ3 |A|=" + std::to_string(z33.max_nonfull_size) +
                       " |3∧A|=" + std::to_string(z33.witness_ksum_size) + "; threshold over " +
                       std::to_string(threshold_groups) + " odd-order groups; c_2(9)=" + rational_str(c2.value) +
                       ", " + seconds(clock.ms());
  for (const auto& b : bad) detail += "; FAILED " + b;
  return {bad.empty(), detail};
}

Outcome mainseq() {
  Stopwatch clock;
  Failures f;
  std::uint64_t checked = 0;
  std::map<std::string, std::uint64_t> census;
  for (const auto& g : kt::groups_of_order(2, 9)) {
    const auto r = verify_theorem_mainseq(g, 8, options());
    checked += r.checked;
    for (const auto& [k, c] : r.census) census[k] += c;
    f.add(r);
  }
  const auto ms = clock.ms();
  std::string tags;
  for (const auto& [k, c] : census) tags += " " + k + "=" + std::to_string(c);
  return {f.empty() && ms < 300'000, std::to_string(checked) + " (A,k) instances," + tags + ", " + seconds(ms) +
                                         " (target 5min)" + (f.empty() ? "" : "; " + f.str())};
}

Outcome mutation() {
  const auto broken = options(&kt::mutant_layers);
  const auto c2 = theorem_main(broken, true);
  const auto c3 = dds_bound(broken);
  return {!c2.pass && !c3.pass, std::string("corrupted DP: criterion 2 ") + (c2.pass ? "PASS" : "FAIL") +
                                    ", criterion 3 " + (c3.pass ? "PASS" : "FAIL")};
}

Outcome determinism() {
  const auto runs = [](unsigned jobs) {
    VerifyOptions o;
    o.jobs = jobs;
    o.seed = 0;
    SearchOptions so;
    so.jobs = jobs;
    so.block = 5000;
    Json all = Json::array();
    all.push_back(verify_theorem_main(GroupSpec({2, 6}), o).to_json(false));
    all.push_back(verify_dds_bound(11, o).to_json(false));
    all.push_back(verify_corollary_coset(GroupSpec({4, 4}), o).to_json(false));
    all.push_back(verify_2sum_lemmas(GroupSpec({2, 2, 2, 2}), o).to_json(false));
    all.push_back(verify_lemma_aot(GroupSpec({2, 6}), o).to_json(false));
    all.push_back(verify_prop_ttk(GroupSpec({11}), o).to_json(false));
    all.push_back(verify_theorem_mainseq(GroupSpec({7}), 7, o).to_json(false));
    all.push_back(verify_graphprop_induced(GroupSpec({13}), 5, 8, o).to_json(false));
    all.push_back(covering_threshold_check(GroupSpec({15}), o).to_json(false));
    auto mutant = o;
    mutant.engine = &kt::mutant_layers;
    all.push_back(verify_dds_bound(11, mutant).to_json(false));
    all.push_back(to_json(ck_of_order(9, 3, false, false, so)));
    all.push_back(to_json(max_nonfull_size(GroupSpec({15}), 2, so)));
    return all.dump();
  };
  const auto one = runs(1);
  const bool same2 = runs(2) == one;
  const bool same8 = runs(8) == one;
  return {same2 && same8, "12 reports, " + std::to_string(one.size()) + " bytes; jobs=2 " +
                              (same2 ? "identical" : "DIFFERS") + ", jobs=8 " + (same8 ? "identical" : "DIFFERS")};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--jobs" && i + 1 < argc) {
      g_jobs = static_cast<unsigned>(std::max(1, std::atoi(argv[++i])));
    } else if (arg == "--only" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      for (std::string tok; std::getline(ss, tok, ',');) only.insert(std::atoi(tok.c_str()));
    } else {
      std::cerr << "usage: ksumlab_acceptance [--jobs N] [--only i,j,...]\n";
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"k-sum lower bound, all groups of order <= 16", [] { return theorem_main(options()); }},
      {"Z_p restricted-sum bound", [] { return dds_bound(options()); }},
      {"k-sums of cosets", corollary_coset},
      {"pair-cover probability", lemma_prob},
      {"rich vertex subsets in colourings", graphprop},
      {"covering constants and Z3xZ3 witness", extremal},
      {"sequence k-sums, length <= 8, order <= 9", mainseq},
      {"mutation test", mutation},
      {"determinism across 1/2/8 workers", determinism},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && !only.contains(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << id << "  " << criteria[i].first
              << ": " << o.detail << std::endl;
  }
  return failed ? 1 : 0;
}
