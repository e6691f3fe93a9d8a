// Command-line front end: determinants, witnesses, the reference table,
// partition classification, Betti numbers and the property suites.

#include <atomic>
#include <chrono>
#include <exception>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdet/det_sr.hpp"
#include "sdet/errors.hpp"
#include "sdet/homology.hpp"
#include "sdet/io.hpp"
#include "sdet/system.hpp"
#include "sdet/verify.hpp"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kResource = 3 };

// Published values of det on the canonical witness, row r = 2..8, column
// d = 2..10; 0 marks a cell that was never computed there.
constexpr int kReference[7][9] = {
    {-1, 1, 1, 1, -1, 1, 1, 1, -1},  //
    {-1, -1, 1, 1, 1, 1, 1, 1, -1},  //
    {1, -1, 1, 1, 1, -1, 1, 1, 0},   //
    {-1, -1, 1, 1, 0, 0, 0, 0, 0},   //
    {1, -1, 0, 0, 0, 0, 0, 0, 0},    //
    {1, 0, 0, 0, 0, 0, 0, 0, 0},     //
    {1, 0, 0, 0, 0, 0, 0, 0, 0},     //
};

std::optional<int> reference_value(int r, int d) {
  if (r < 2 || r > 8 || d < 2 || d > 10 || kReference[r - 2][d - 2] == 0) return std::nullopt;
  return kReference[r - 2][d - 2];
}

struct Globals {
  std::string format = "text";
  std::string backend = "auto";
  int threads = 1;
  std::uint64_t seed = sdet::verify::SuiteOptions{}.seed;
  std::string command_line;
};

sdet::la::DetOptions det_options(const Globals& g) {
  sdet::la::DetOptions o;
  if (g.backend == "bareiss") o.backend = sdet::la::Backend::Bareiss;
  else if (g.backend == "multimodular") o.backend = sdet::la::Backend::Multimodular;
  o.threads = g.threads;
  return o;
}

const char* backend_name(sdet::la::Backend b) {
  switch (b) {
    case sdet::la::Backend::Bareiss: return "bareiss";
    case sdet::la::Backend::Multimodular: return "multimodular";
    default: return "auto";
  }
}

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// What every command prints: the outputs plus provenance of the run.
struct RunReport {
  std::string command;
  std::string input_digest;
  std::string backend = "-";
  json outputs = json::object();
  std::vector<std::string> text;  // body for --format text
  double seconds = 0;

  void line(const std::string& s) { text.push_back(s); }
  void kv(const std::string& key, const std::string& value) {
    outputs[key] = value;
    text.push_back(key + ": " + value);
  }

  void print(const Globals& g, std::ostream& os) const {
    if (g.format == "json") {
      json j;
      j["command"] = command;
      j["input_digest"] = input_digest;
      j["backend"] = backend;
      j["outputs"] = outputs;
      j["elapsed_seconds"] = seconds;
      os << j.dump(2) << '\n';
      return;
    }
    for (const auto& l : text) os << l << '\n';
    os << "backend: " << backend << '\n';
    os << "input: " << input_digest << '\n';
    os << "command: " << command << '\n';
    os << "elapsed: " << std::fixed << std::setprecision(3) << seconds << " s\n";
  }
};

template <class F>
int run(const Globals& g, F&& body) {
  RunReport rep;
  rep.command = g.command_line;
  const auto t0 = std::chrono::steady_clock::now();
  const int code = body(rep);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rep.print(g, std::cout);
  return code;
}

std::string bool_str(bool b) { return b ? "yes" : "no"; }

int cmd_det(const Globals& g, const std::string& path, const std::string& dump) {
  return run(g, [&](RunReport& rep) {
    const std::string bytes = slurp(path);
    rep.input_digest = fnv1a(bytes);
    std::istringstream in(bytes);
    auto parsed = sdet::io::read_tensor_or_basis(in);
    const sdet::TensorAssignment t = std::holds_alternative<sdet::TensorAssignment>(parsed)
                                         ? std::get<sdet::TensorAssignment>(parsed)
                                         : sdet::tensor_from_basis(std::get<sdet::BasisAssignment>(parsed));
    const sdet::SystemMatrix m = sdet::build_matrix(t);
    const auto opts = det_options(g);
    rep.backend = backend_name(sdet::la::resolve_backend(m.rows(), opts));
    if (!dump.empty()) {
      std::ofstream out(dump);
      if (!out) throw std::runtime_error("cannot write '" + dump + "'");
      sdet::la::write_coordinate(out, m.matrix());
    }
    const mpq_class det = sdet::la::determinant(m.matrix(), opts);
    rep.kv("det", det.get_str());
    rep.kv("nonzero", bool_str(sgn(det) != 0));
    rep.kv("r", std::to_string(t.r));
    rep.kv("d", std::to_string(t.d));
    rep.kv("dimension", std::to_string(m.rows()));
    rep.kv("nonzeros", std::to_string(m.matrix().nnz()));
    if (auto x = sdet::detect_degenerate_simplex(t)) rep.kv("degenerate_simplex", x->to_string());
    return kOk;
  });
}

int cmd_gen_e(const Globals& g, int r, int d, const std::string& out_path) {
  if (r < 2 || d < 1) throw std::invalid_argument("gen-e needs r >= 2 and d >= 1");
  const sdet::BasisAssignment e = sdet::generate_E(r, d);
  if (out_path.empty() || out_path == "-") {
    sdet::io::write_basis(std::cout, e);
    return kOk;
  }
  return run(g, [&](RunReport& rep) {
    rep.input_digest = fnv1a("gen-e " + std::to_string(r) + " " + std::to_string(d));
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    sdet::io::write_basis(out, e);
    out.close();
    if (!out) throw std::runtime_error("write to '" + out_path + "' failed");
    rep.kv("file", out_path);
    rep.kv("assignments", std::to_string(e.labels.size()));
    return kOk;
  });
}

int cmd_table(const Globals& g, long max_dim, int r_max, int d_max) {
  return run(g, [&](RunReport& rep) {
    rep.input_digest = fnv1a("table " + std::to_string(max_dim) + " " + std::to_string(r_max) + " " +
                             std::to_string(d_max));
    const auto opts = det_options(g);
    rep.backend = backend_name(opts.backend);
    json cells = json::array();
    long computed = 0, skipped = 0, agree = 0, disagree = 0;
    std::ostringstream head;
    head << std::left << std::setw(3) << "r" << std::setw(4) << "d" << std::setw(10) << "dim" << std::setw(10)
         << "det" << std::setw(11) << "reference" << "agreement";
    rep.line(head.str());
    for (int r = 2; r <= r_max; ++r) {
      for (int d = 2; d <= d_max; ++d) {
        const mpz_class dim = d * sdet::binomial(r * d - 1, r - 1);
        const auto ref = reference_value(r, d);
        json cell;
        cell["r"] = r;
        cell["d"] = d;
        cell["dimension"] = dim.get_str();
        std::string value = "skipped";
        std::string verdict = "-";
        if (dim <= max_dim) {
          const mpq_class det = sdet::det_Sr(sdet::generate_E(r, d), opts);
          value = det.get_str();
          ++computed;
          if (ref) {
            const bool same = det == *ref;
            verdict = same ? "match" : (abs(det) == 1 ? "sign differs" : "value differs");
            (same ? agree : disagree)++;
          }
        } else {
          ++skipped;
        }
        cell["det"] = value;
        cell["reference"] = ref ? json(std::to_string(*ref)) : json(nullptr);
        cell["agreement"] = verdict;
        cells.push_back(cell);
        std::ostringstream row;
        row << std::left << std::setw(3) << r << std::setw(4) << d << std::setw(10) << dim.get_str() << std::setw(10)
            << value << std::setw(11) << (ref ? std::to_string(*ref) : "-") << verdict;
        rep.line(row.str());
      }
    }
    rep.outputs["cells"] = cells;
    rep.kv("max_dim", std::to_string(max_dim));
    rep.kv("computed", std::to_string(computed));
    rep.kv("skipped", std::to_string(skipped));
    rep.kv("reference_matches", std::to_string(agree));
    rep.kv("reference_mismatches", std::to_string(disagree));
    return kOk;
  });
}

json betti_json(const sdet::BettiVector& b) {
  json j = json::array();
  for (long v : b.values) j.push_back(v);
  return j;
}

int cmd_classify(const Globals& g, const std::string& path) {
  return run(g, [&](RunReport& rep) {
    const std::string bytes = slurp(path);
    rep.input_digest = fnv1a(bytes);
    std::istringstream in(bytes);
    const sdet::DPartition p = sdet::io::read_partition(in);
    const auto opts = det_options(g);
    rep.backend = backend_name(sdet::la::resolve_backend(static_cast<int>(sdet::binomial_u64(p.n(), p.r())), opts));
    const sdet::ClassificationReport c = sdet::classify_partition(p, opts);
    rep.kv("det", c.det.get_str());
    rep.kv("prehomogeneous", bool_str(c.prehomogeneous));
    rep.kv("homogeneous", bool_str(c.homogeneous));
    json sizes = json::array(), betti = json::array();
    std::string size_text, betti_text;
    for (std::size_t i = 0; i < c.part_sizes.size(); ++i) {
      sizes.push_back(c.part_sizes[i]);
      betti.push_back(betti_json(c.betti[i]));
      size_text += (i ? " " : "") + std::to_string(c.part_sizes[i]);
      betti_text += (i ? " " : "") + c.betti[i].to_string();
    }
    rep.outputs["part_sizes"] = sizes;
    rep.line("part_sizes: " + size_text);
    rep.outputs["betti"] = betti;
    rep.line("betti (b_-1..b_r-1 per part): " + betti_text);
    json deficits = json::array();
    for (const auto& def : c.deficits) {
      deficits.push_back({{"part", def.part}, {"level", def.level}, {"have", def.have}, {"need", def.need}});
      rep.line("skeleton deficit: part " + std::to_string(def.part) + " has " + std::to_string(def.have) + " of " +
               std::to_string(def.need) + " " + std::to_string(def.level) + "-subsets");
    }
    rep.outputs["skeleton_deficits"] = deficits;
    rep.kv("condition_det_nonzero", bool_str(c.det_nonzero));
    rep.kv("condition_all_betti_zero", bool_str(c.all_betti_zero));
    rep.kv("condition_top_betti_zero", bool_str(c.top_betti_zero));
    rep.kv("consistent", bool_str(c.consistent));
    return c.consistent ? kOk : kViolation;
  });
}

int cmd_classify_all(const Globals& g, int n, int r, int d, bool homogeneous_only, std::uint64_t cap) {
  return run(g, [&](RunReport& rep) {
    rep.input_digest = fnv1a("classify-all " + std::to_string(n) + " " + std::to_string(r) + " " + std::to_string(d) +
                             (homogeneous_only ? " homogeneous" : ""));
    const auto opts = det_options(g);
    rep.backend = backend_name(sdet::la::resolve_backend(static_cast<int>(sdet::binomial_u64(n, r)), opts));
    sdet::PartitionEnumerator e(n, r, d, homogeneous_only, cap);
    // Workers pull from the shared enumerator; only sums leave a worker, so
    // the report does not depend on scheduling.
    std::mutex lock;
    std::atomic<long> total = 0, nonzero = 0, pre = 0, homog = 0, inconsistent = 0;
    std::exception_ptr failure;
    auto worker = [&] {
      try {
        for (;;) {
          std::optional<sdet::DPartition> p;
          {
            std::lock_guard<std::mutex> guard(lock);
            if (failure) return;
            p = e.next();
          }
          if (!p) return;
          const auto c = sdet::classify_partition(*p, opts);
          ++total;
          nonzero += c.det_nonzero;
          pre += c.prehomogeneous;
          homog += c.homogeneous;
          inconsistent += !c.consistent;
        }
      } catch (...) {
        std::lock_guard<std::mutex> guard(lock);
        if (!failure) failure = std::current_exception();
      }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < g.threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    rep.kv("partitions", std::to_string(total));
    rep.kv("nonzero_det", std::to_string(nonzero));
    rep.kv("prehomogeneous", std::to_string(pre));
    rep.kv("homogeneous", std::to_string(homog));
    rep.kv("inconsistent", std::to_string(inconsistent));
    return inconsistent == 0 ? kOk : kViolation;
  });
}

int cmd_betti(const Globals& g, const std::string& path) {
  return run(g, [&](RunReport& rep) {
    const std::string bytes = slurp(path);
    rep.input_digest = fnv1a(bytes);
    std::istringstream in(bytes);
    const sdet::Hypergraph h = sdet::io::read_hypergraph(in);
    const sdet::BettiVector b = sdet::betti_numbers(h);
    rep.outputs["betti"] = betti_json(b);
    rep.line("betti (b_-1..b_r-1): " + b.to_string());
    rep.kv("euler_characteristic", std::to_string(sdet::euler_characteristic(h)));
    rep.kv("hyperedges", std::to_string(h.size()));
    return kOk;
  });
}

int cmd_verify(const Globals& g, const std::string& suite, int trials) {
  std::vector<std::string> suites;
  if (suite == "all") {
    suites = sdet::verify::suite_names();
  } else {
    suites.push_back(suite);
    const auto& known = sdet::verify::suite_names();
    if (std::find(known.begin(), known.end(), suite) == known.end())
      throw CLI::ValidationError("unknown suite '" + suite + "'");
  }
  return run(g, [&](RunReport& rep) {
    rep.input_digest = fnv1a("verify " + suite + " " + std::to_string(g.seed) + " " + std::to_string(trials));
    sdet::verify::SuiteOptions o;
    o.seed = g.seed;
    o.trials = trials;
    o.det = det_options(g);
    rep.backend = backend_name(o.det.backend);
    bool ok = true;
    json results = json::array();
    for (const auto& name : suites) {
      const auto res = sdet::verify::run_suite(name, o);
      ok = ok && res.passed();
      json j;
      j["suite"] = name;
      j["seed"] = res.seed;
      j["checks"] = res.checks;
      j["failures"] = res.failures;
      j["passed"] = res.passed();
      json facts = json::object();
      std::string fact_text;
      for (const auto& [k, v] : res.facts) {
        facts[k] = v;
        fact_text += "; " + k + " " + v;
      }
      j["facts"] = facts;
      j["messages"] = res.messages;
      results.push_back(j);
      rep.line(std::string(res.passed() ? "PASS " : "FAIL ") + name + ": " + std::to_string(res.checks) + " checks, " +
               std::to_string(res.failures) + " failures" + fact_text);
      for (const auto& m : res.messages) rep.line("  " + m);
    }
    rep.outputs["seed"] = g.seed;
    rep.outputs["suites"] = results;
    return ok ? kOk : kViolation;
  });
}

std::string join_args(int argc, char** argv) {
  std::string s = "sdet";
  for (int i = 1; i < argc; ++i) s += std::string(" ") + argv[i];
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact generalized determinants and hypergraph partition classification"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  g.command_line = join_args(argc, argv);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--backend", g.backend, "Determinant backend")->check(CLI::IsMember({"bareiss", "multimodular", "auto"}));
  app.add_option("--threads", g.threads, "Worker threads for modular determinants")->check(CLI::Range(1, 256));
  app.add_option("--seed", g.seed, "Seed for randomized suites");

  std::string path, out_path, dump, suite;
  int r = 0, d = 0, n = 0, trials = 0, r_max = 8, d_max = 10;
  long max_dim = 5000;
  bool homogeneous_only = false;
  std::uint64_t cap = sdet::PartitionEnumerator::kDefaultCap;

  auto* det = app.add_subcommand("det", "Determinant of the system matrix of a tensor or basis assignment");
  det->add_option("file", path, "Tensor or basis-assignment file")->required();
  det->add_option("--dump-matrix", dump, "Also write the matrix in coordinate format");

  auto* gen = app.add_subcommand("gen-e", "Write the canonical witness as a basis assignment");
  gen->add_option("r", r)->required();
  gen->add_option("d", d)->required();
  gen->add_option("-o,--output", out_path, "Output file (stdout if omitted)");

  auto* table = app.add_subcommand("table", "Determinants of the canonical witnesses over an (r,d) grid");
  table->add_option("--max-dim", max_dim, "Largest matrix dimension to attempt")->check(CLI::NonNegativeNumber);
  table->add_option("--r-max", r_max, "Largest r")->check(CLI::Range(2, 64));
  table->add_option("--d-max", d_max, "Largest d")->check(CLI::Range(2, 64));

  auto* classify = app.add_subcommand("classify", "Classify a d-partition of K^r_{rd}");
  classify->add_option("file", path, "Partition file")->required();

  auto* classify_all = app.add_subcommand("classify-all", "Classify every d-partition of K^r_n");
  classify_all->add_option("n", n)->required();
  classify_all->add_option("r", r)->required();
  classify_all->add_option("d", d)->required();
  classify_all->add_flag("--homogeneous-only", homogeneous_only, "Only partitions with equal part sizes");
  classify_all->add_option("--cap", cap, "Refuse to enumerate more partitions than this");

  auto* betti = app.add_subcommand("betti", "Reduced Betti numbers of a hypergraph");
  betti->add_option("file", path, "Hypergraph file")->required();

  auto* verify = app.add_subcommand("verify", "Run a property suite");
  verify->add_option("suite", suite, "Suite name or 'all'")->required();
  verify->add_option("--trials", trials, "Trials per shape (0 = suite default)")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*det) return cmd_det(g, path, dump);
    if (*gen) return cmd_gen_e(g, r, d, out_path);
    if (*table) return cmd_table(g, max_dim, r_max, d_max);
    if (*classify) return cmd_classify(g, path);
    if (*classify_all) return cmd_classify_all(g, n, r, d, homogeneous_only, cap);
    if (*betti) return cmd_betti(g, path);
    if (*verify) return cmd_verify(g, suite, trials);
  } catch (const sdet::ParseError& e) {
    std::cerr << "parse error: " << path << ": " << e.what() << '\n';
    return kUsage;
  } catch (const sdet::ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << '\n';
    return kResource;
  } catch (const sdet::InvalidPartition& e) {
    std::cerr << "invalid partition: " << e.what() << '\n';
    return kUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const sdet::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
