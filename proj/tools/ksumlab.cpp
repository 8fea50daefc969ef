// ksumlab command-line front end.
//
//   ksumlab ksum      --group Z5 --set 0,1,2,3 --k 2
//   ksumlab classify  --group Z2xZ2 --set "(0,0),(0,1),(1,0)"
//   ksumlab coloring  --group Z7 --set 0,1,2,3,4     (or --file colouring.txt)
//   ksumlab prob      --a 3 --n 6
//   ksumlab verify    theorem-main --group Z2xZ2
//   ksumlab search    ck --n 9 --k 2
//
// Exit codes: 0 success / PASS, 1 FAIL or violation, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ksumlab/coloring.hpp"
#include "ksumlab/literal.hpp"
#include "ksumlab/search.hpp"
#include "ksumlab/structure.hpp"
#include "ksumlab/verify.hpp"

namespace {

using namespace ksumlab;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string format = "json";
  std::string out_path;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  bool no_timing = false;
  Limits limits;
};

Limits limits_from_env() {
  Limits l;
  if (const char* v = std::getenv("KSUMLAB_MAX_ORDER")) {
    char* end = nullptr;
    const auto n = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0' || n < 2) throw Error("KSUMLAB_MAX_ORDER: bad value '" + std::string(v) + "'");
    l.max_exhaustive_order = n;
    l.max_search_order = n;
    l.max_subgroup_order = std::max<std::uint64_t>(n, l.max_subgroup_order);
  }
  return l;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto key = prefix + it.key();
    if (it->is_object() && !it->empty()) {
      flatten(*it, key + ".", rows);
    } else if (it->is_array() && !it->empty() && it->front().is_object()) {
      for (std::size_t i = 0; i < it->size(); ++i) flatten((*it)[i], key + "[" + std::to_string(i) + "].", rows);
    } else {
      rows.emplace_back(key, it->is_string() ? it->get<std::string>() : it->dump());
    }
  }
}

/// One aligned "key  value" line per leaf.
void write_text(std::ostream& os, const Json& j) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) os << std::left << std::setw(static_cast<int>(width + 2)) << k << v << '\n';
}

void emit(const Common& c, const Json& j) {
  std::ostringstream buf;
  if (c.format == "text")
    write_text(buf, j);
  else
    buf << j.dump(2) << '\n';
  if (c.out_path.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream f(c.out_path);
    if (!f) throw Error("cannot open output file '" + c.out_path + "'");
    f << buf.str();
  }
}

Json report_json(const Common& c, const VerifyReport& r) { return r.to_json(!c.no_timing); }

VerifyOptions verify_options(const Common& c) {
  VerifyOptions o;
  o.jobs = c.jobs;
  o.seed = c.seed;
  o.limits = c.limits;
  return o;
}

Json table_json(const KSumTable& t) {
  Json layers = Json::array();
  for (std::size_t j = 0; j < t.layers.size(); ++j)
    layers.push_back({{"k", j}, {"size", t.layers[j].size()}, {"set", to_literal(t.layers[j])}});
  return layers;
}

int run_ksum(const Common& c, const std::string& group, const std::string& set, const std::string& seq,
             int k) {
  const auto g = parse_group_spec(group, c.limits.max_parse_order);
  Json j;
  j["group"] = g.str();
  if (!seq.empty()) {
    const auto s = parse_sequence(g, seq);
    j["sequence"] = to_literal(s);
    j["length"] = s.length();
    if (k >= 0) {
      const auto r = ksum_sequence(s, static_cast<std::size_t>(k));
      j["k"] = k;
      j["result"] = to_literal(r);
      j["size"] = r.size();
    } else {
      j["layers"] = table_json(ksum_table(s));
    }
  } else {
    const auto a = parse_set(g, set);
    j["set"] = to_literal(a);
    if (k >= 0) {
      const auto r = ksum_set(a, static_cast<std::size_t>(k));
      j["k"] = k;
      j["result"] = to_literal(r);
      j["size"] = r.size();
    } else {
      j["layers"] = table_json(ksum_table(a));
    }
  }
  emit(c, j);
  return kExitOk;
}

int run_classify(const Common& c, const std::string& group, const std::string& set, const std::string& seq,
                 int k) {
  const auto g = parse_group_spec(group, c.limits.max_parse_order);
  Json j;
  j["group"] = g.str();
  if (!seq.empty()) {
    const auto s = parse_sequence(g, seq);
    j["sequence"] = to_literal(s);
    j["support"] = to_literal(support(s));
    j["support_at_least_2"] = to_literal(support_at_least(s, 2));
    j["ap3_middle_only"] = is_ap3_middle_only(s);
    j["case"] = std::string(to_string(classify_sequence_case(s)));
    emit(c, j);
    return kExitOk;
  }
  const auto a = parse_set(g, set);
  if (a.empty()) throw Error("classify needs a non-empty set");
  const auto n = a.size();
  j["set"] = to_literal(a);
  j["size"] = n;
  j["is_coset"] = is_coset(a);
  j["is_2coset"] = is_2coset(a);
  j["is_almost_2coset"] = is_almost_2coset(a);
  if (n == 4) j["is_union_two_order2_cosets"] = is_union_two_order2_cosets(a);
  j["stabilizer"] = to_literal(stabilizer(a));
  if (g.order() <= c.limits.max_subgroup_order) {
    const auto sizes = coset_sizes_contained(a, c.limits.max_subgroup_order);
    j["coset_sizes_contained"] = std::vector<std::size_t>(sizes.begin(), sizes.end());
  }
  if (n >= 2) j["two_sum_size"] = ksum_set(a, 2).size();
  Json cases = Json::object();
  if (k >= 0) {
    cases[std::to_string(k)] = std::string(to_string(classify_equality_case(a, static_cast<std::size_t>(k))));
  } else {
    for (std::size_t kk = 2; kk + 2 <= n; ++kk)
      cases[std::to_string(kk)] = std::string(to_string(classify_equality_case(a, kk)));
  }
  j["equality_case"] = cases;
  emit(c, j);
  return kExitOk;
}

std::string vertices_str(const std::vector<std::uint32_t>& u) {
  std::string s;
  for (auto v : u) s += (s.empty() ? "" : ",") + std::to_string(v);
  return s;
}

int run_coloring(const Common& c, const std::string& group, const std::string& set, const std::string& file,
                 bool emit_file) {
  SubsetSearchOptions sopt;
  sopt.seed = c.seed;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw Error("cannot open colouring file '" + file + "'");
    const auto col = read_coloring(in);
    Json j;
    j["n"] = col.n();
    j["palette_size"] = col.palette_size();
    const bool proper = validate_proper(col);
    j["proper"] = proper;
    if (!proper) {
      emit(c, j);
      return kExitFail;
    }
    if (col.n() >= 5 && col.palette_size() >= col.n()) {
      const auto r = find_rich_subset(col, sopt);
      j["mode"] = r.exhaustive ? "exhaustive" : "sampled";
      j["subset"] = vertices_str(r.vertices);
      j["colours_on_subset"] = r.colours;
      j["seed"] = c.seed;
    } else if (col.n() >= 5 && col.n() % 2 == 0 && col.palette_size() == col.n() - 1) {
      const auto u = find_matching_subset(col);
      j["mode"] = "perfect_matchings";
      j["subset"] = vertices_str(u);
      j["colours_on_subset"] = colours_on(col, u);
    } else {
      j["mode"] = "none";
      j["note"] = "no subset claim applies (need n >= 5 and either >= n colours or n-1 colours with n even)";
    }
    emit(c, j);
    return kExitOk;
  }
  const auto g = parse_group_spec(group, c.limits.max_parse_order);
  const auto a = parse_set(g, set);
  const auto col = induced_coloring(a);
  if (emit_file) {
    std::ostringstream buf;
    write_coloring(buf, col);
    if (c.out_path.empty()) {
      std::cout << buf.str();
    } else {
      std::ofstream f(c.out_path);
      f << buf.str();
    }
    return kExitOk;
  }
  Json j;
  j["group"] = g.str();
  j["set"] = to_literal(a);
  j["n"] = col.n();
  j["palette_size"] = col.palette_size();
  if (a.size() >= 5) {
    const auto r = find_2sum_rich_subset(a, sopt);
    j["case"] = r.rich_case ? "rich" : "two_coset";
    j["mode"] = r.exhaustive ? "exhaustive" : "sampled";
    j["subset"] = to_literal(r.subset);
    j["subset_size"] = r.subset.size();
    j["subset_two_sum_size"] = ksum_set(r.subset, 2).size();
    j["seed"] = c.seed;
  }
  emit(c, j);
  return kExitOk;
}

int run_prob(const Common& c, std::uint64_t a, std::uint64_t n) {
  const auto p = exact_pair_cover_probability(a, n);
  if (c.format == "text") {
    std::ostringstream s;
    s << rational_str(p.value) << '\n';
    if (c.out_path.empty()) std::cout << s.str();
    else std::ofstream(c.out_path) << s.str();
    return kExitOk;
  }
  emit(c, Json{{"a", a}, {"n", n}, {"s", (n + 3) / 2}, {"value", rational_str(p.value)}});
  return kExitOk;
}

struct VerifyArgs {
  std::string claim;
  std::string group;
  std::size_t min_size = 0;
  std::size_t max_size = 0;
  std::uint32_t p = 0;
  std::size_t max_len = 8;
  bool orbit = false;
  std::uint64_t n_min = 5;
  std::uint64_t n_max = 30;
  std::vector<std::uint32_t> round_robin;
  std::string file;
};

int run_verify(const Common& c, const VerifyArgs& v) {
  auto opt = verify_options(c);
  opt.orbit_reduction = v.orbit;
  const auto need_group = [&] {
    if (v.group.empty()) throw Error("verify " + v.claim + " requires --group");
    return parse_group_spec(v.group, c.limits.max_parse_order);
  };
  VerifyReport r;
  if (v.claim == "theorem-main") {
    const auto g = need_group();
    r = verify_theorem_main(g, v.min_size ? v.min_size : 4, v.max_size ? v.max_size : g.order(), opt);
  } else if (v.claim == "dds") {
    if (!v.p) throw Error("verify dds requires --p");
    r = verify_dds_bound(v.p, opt);
  } else if (v.claim == "corollary-coset") {
    r = verify_corollary_coset(need_group(), opt);
  } else if (v.claim == "2sum-lemmas") {
    r = verify_2sum_lemmas(need_group(), opt);
  } else if (v.claim == "lemma-aot") {
    r = verify_lemma_aot(need_group(), opt);
  } else if (v.claim == "prop-ttk") {
    r = verify_prop_ttk(need_group(), opt);
  } else if (v.claim == "theorem-mainseq") {
    r = verify_theorem_mainseq(need_group(), v.max_len, opt);
  } else if (v.claim == "lemma-prob") {
    r = verify_lemma_prob(v.n_min, v.n_max, opt);
  } else if (v.claim == "graphprop") {
    if (!v.file.empty()) {
      std::ifstream in(v.file);
      if (!in) throw Error("cannot open colouring file '" + v.file + "'");
      r = verify_graphprop({read_coloring(in)}, v.file, opt);
    } else if (!v.round_robin.empty()) {
      r = verify_graphprop(round_robin_corpus(v.round_robin), "round-robin", opt);
    } else {
      const auto g = need_group();
      r = verify_graphprop_induced(g, v.min_size ? v.min_size : 5, v.max_size ? v.max_size : g.order(), opt);
    }
  } else if (v.claim == "covering-threshold") {
    r = covering_threshold_check(need_group(), opt);
  } else {
    throw Error("unknown claim '" + v.claim + "'");
  }
  emit(c, report_json(c, r));
  return r.pass() ? kExitOk : kExitFail;
}

struct SearchArgs {
  std::uint64_t n = 0;
  std::uint32_t k = 2;
  bool all_k = false;
  bool even_ok = false;
  bool witness_only = false;
  std::string checkpoint;
  std::string group;
};

int run_search_ck(const Common& c, const SearchArgs& s) {
  Stopwatch clock;
  SearchOptions opt;
  opt.jobs = c.jobs;
  opt.seed = c.seed;
  opt.limits = c.limits;
  if (!s.checkpoint.empty()) opt.checkpoint = s.checkpoint;
  std::vector<std::uint32_t> ks;
  if (s.all_k) {
    for (std::uint32_t k = 2; k < s.n; ++k) ks.push_back(k);
  } else {
    ks.push_back(s.k);
  }
  Json results = Json::array();
  for (auto k : ks) {
    if (opt.checkpoint && ks.size() > 1)
      opt.checkpoint = s.checkpoint + ".k" + std::to_string(k);
    results.push_back(to_json(ck_of_order(s.n, k, s.even_ok, s.witness_only, opt)));
  }
  Json j;
  j["n"] = s.n;
  j["results"] = std::move(results);
  j["seed"] = c.seed;
  j["elapsed_ms"] = c.no_timing ? 0 : static_cast<std::int64_t>(clock.ms());
  if (c.format == "text") {
    // Aligned results table.
    std::ostringstream os;
    os << std::left << std::setw(6) << "k" << std::setw(18) << "group" << std::setw(10) << "max"
       << std::setw(10) << "ratio" << std::setw(12) << "kind" << "witness\n";
    for (const auto& r : j["results"])
      for (const auto& cl : r["classes"])
        os << std::left << std::setw(6) << cl["k"].dump() << std::setw(18) << cl["group"].get<std::string>()
           << std::setw(10) << cl["max_nonfull_size"].dump() << std::setw(10) << cl["ratio"].get<std::string>()
           << std::setw(12) << cl["kind"].get<std::string>() << cl["witness"].get<std::string>() << '\n';
    for (const auto& r : j["results"])
      os << "c_" << r["k"].dump() << "(" << s.n << ") = " << r["c_k_n"].get<std::string>() << " ("
         << r["kind"].get<std::string>() << ")\n";
    if (c.out_path.empty()) std::cout << os.str();
    else std::ofstream(c.out_path) << os.str();
  } else {
    emit(c, j);
  }
  return kExitOk;
}

int run_search_group(const Common& c, const SearchArgs& s) {
  SearchOptions opt;
  opt.jobs = c.jobs;
  opt.seed = c.seed;
  opt.limits = c.limits;
  if (!s.checkpoint.empty()) opt.checkpoint = s.checkpoint;
  const auto g = parse_group_spec(s.group, c.limits.max_parse_order);
  const auto r = s.witness_only ? witness_only_search(g, s.k, opt) : max_nonfull_size(g, s.k, opt);
  emit(c, to_json(r));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ksumlab: restricted k-sums in finite abelian groups"};
  app.require_subcommand(1, 1);
  // Global flags may also follow the subcommand.
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", common.out_path, "Write output to this path instead of stdout");
  app.add_option("--jobs", common.jobs, "Worker threads for verify/search")->check(CLI::Range(1U, 1024U));
  app.add_option("--seed", common.seed, "Seed for randomized paths");
  app.add_flag("--no-timing", common.no_timing, "Report elapsed_ms as 0 (byte-identical reports)");

  std::string group, set, seq;
  int k = -1;

  auto* ksum = app.add_subcommand("ksum", "Restricted k-sums of a set or sequence");
  ksum->add_option("--group", group, "Group spec, e.g. Z2xZ4 or 2,4")->required();
  ksum->add_option("--set", set, "Set literal, e.g. 0,1,2 or (0,1),(1,1)");
  ksum->add_option("--sequence", seq, "Sequence literal, e.g. 0^2,1");
  ksum->add_option("--k", k, "k (omit for the full table)")->check(CLI::NonNegativeNumber);

  auto* classify = app.add_subcommand("classify", "Structural classification of a set or sequence");
  classify->add_option("--group", group)->required();
  classify->add_option("--set", set);
  classify->add_option("--sequence", seq);
  classify->add_option("--k", k)->check(CLI::NonNegativeNumber);

  std::string file;
  bool emit_file = false;
  auto* coloring = app.add_subcommand("coloring", "Induced colourings and rich vertex subsets");
  coloring->add_option("--group", group);
  coloring->add_option("--set", set);
  coloring->add_option("--file", file, "Colouring file ('n <n>' then 'u v c' lines)");
  coloring->add_flag("--emit", emit_file, "Print the induced colouring in file format");

  std::uint64_t pa = 0, pn = 0;
  auto* prob = app.add_subcommand("prob", "Exact pair-cover probability p(a,n)");
  prob->add_option("--a", pa)->required();
  prob->add_option("--n", pn)->required();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Exhaustive verification of a claim");
  verify->add_option("claim", va.claim,
                     "theorem-main | dds | corollary-coset | 2sum-lemmas | lemma-aot | prop-ttk | "
                     "theorem-mainseq | lemma-prob | graphprop | covering-threshold")
      ->required();
  verify->add_option("--group", va.group);
  verify->add_option("--min-size", va.min_size);
  verify->add_option("--max-size", va.max_size);
  verify->add_option("--p", va.p, "Prime for dds");
  verify->add_option("--max-len", va.max_len, "Maximum sequence length");
  verify->add_flag("--orbit-reduction", va.orbit, "One sequence per translation orbit");
  verify->add_option("--n-min", va.n_min);
  verify->add_option("--n-max", va.n_max);
  verify->add_option("--round-robin", va.round_robin, "Even n values for round-robin colourings")->delimiter(',');
  verify->add_option("--file", va.file, "Colouring file for graphprop");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Extremal search for c_k(n)");
  search->require_subcommand(1, 1);
  search->fallthrough();
  auto* ck = search->add_subcommand("ck", "c_k(n) over all abelian groups of order n");
  ck->add_option("--n", sa.n)->required();
  ck->add_option("--k", sa.k);
  ck->add_flag("--all-k", sa.all_k);
  ck->add_flag("--even-ok", sa.even_ok);
  ck->add_flag("--witness-only", sa.witness_only);
  ck->add_option("--checkpoint", sa.checkpoint);
  auto* sgroup = search->add_subcommand("group", "Maximum non-covering size in one group");
  sgroup->add_option("--group", sa.group)->required();
  sgroup->add_option("--k", sa.k);
  sgroup->add_flag("--witness-only", sa.witness_only);
  sgroup->add_option("--checkpoint", sa.checkpoint);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    common.limits = limits_from_env();
    if (ksum->parsed() || classify->parsed()) {
      if (set.empty() == seq.empty()) throw Error("give exactly one of --set or --sequence");
    }
    if (ksum->parsed()) return run_ksum(common, group, set, seq, k);
    if (classify->parsed()) return run_classify(common, group, set, seq, k);
    if (coloring->parsed()) {
      if (file.empty() && (group.empty() || set.empty()))
        throw Error("coloring needs --file or both --group and --set");
      return run_coloring(common, group, set, file, emit_file);
    }
    if (prob->parsed()) return run_prob(common, pa, pn);
    if (verify->parsed()) return run_verify(common, va);
    if (ck->parsed()) return run_search_ck(common, sa);
    if (sgroup->parsed()) return run_search_group(common, sa);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
