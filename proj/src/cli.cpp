#include "p1split/cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "p1split/generate.hpp"
#include "p1split/json_io.hpp"
#include "p1split/oracle.hpp"
#include "p1split/splitter.hpp"

namespace p1split::cli {
namespace {

struct GlobalOptions {
  bool json = true;
  bool pretty = false;
  bool timings = true;
  unsigned jobs = 1;
};

struct Outcome {
  int code = kOk;
  Json document;
  std::string error;
};

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - since).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json load_json(const std::string& path) { return parse_json_text(read_file(path)); }

FieldSpec instance_field(const Json& j) {
  if (!j.is_object() || !j.contains("field")) throw ParseError("field: missing");
  return field_from_json(j.at("field"), "field");
}

// Maps library exceptions onto exit codes.
template <class Fn>
Outcome guarded(const std::string& path, Fn&& fn) {
  auto fail = [&](int code, const std::string& what) {
    Outcome o;
    o.code = code;
    o.error = path + ": " + what;
    return o;
  };
  try {
    return fn();
  } catch (const ParseError& e) {
    return fail(kParseError, std::string("parse error: ") + e.what());
  } catch (const FieldMismatch& e) {
    return fail(kParseError, std::string("parse error: ") + e.what());
  } catch (const DimensionMismatch& e) {
    return fail(kParseError, std::string("parse error: ") + e.what());
  } catch (const SingularMatrix& e) {
    return fail(kSingular, std::string("singular matrix: ") + e.what());
  } catch (const UnsupportedField& e) {
    return fail(kUnsupported, std::string("unsupported: ") + e.what());
  } catch (const EnumerationCapExceeded& e) {
    return fail(kUnsupported, std::string("unsupported: ") + e.what());
  } catch (const VerificationFailure& e) {
    return fail(kVerificationFailed, std::string("internal verification failure: ") + e.what());
  } catch (const std::exception& e) {
    return fail(kVerificationFailed, std::string("internal error: ") + e.what());
  }
}

std::vector<int> to_vector(const GaugeWeights& w) { return std::vector<int>(w.data(), w.data() + w.size()); }

template <class F>
Json splitting_json(const Splitting<F>& s, const VerifyReport& checks) {
  return Json{{"splitting_type", s.n},
              {"W", matrix_to_json(s.W)},
              {"D", matrix_to_json(s.D())},
              {"U", matrix_to_json(s.U)},
              {"shift", s.shift},
              {"scale", to_json(s.scale)},
              {"weights", to_vector(s.weights)},
              {"checks", to_json(checks)}};
}

Json meta_json(const std::optional<std::uint64_t>& seed) {
  Json meta{{"tool", "p1split"}, {"version", kVersion}};
  meta["seed"] = seed ? Json(*seed) : Json(nullptr);
  return meta;
}

struct SplitFlags {
  std::vector<int> weights;
  std::uint64_t tie_break_seed = 0;
};

Outcome split_file(const std::string& path, const SplitFlags& flags, const GlobalOptions& g) {
  return guarded(path, [&] {
    const Json j = load_json(path);
    const FieldSpec field = instance_field(j);
    return with_field(field, [&](auto tag) {
      using F = decltype(tag);
      Instance<F> inst = instance_from_json<F>(j, field);
      if (!flags.weights.empty()) {
        if (static_cast<Eigen::Index>(flags.weights.size()) != inst.dim)
          throw ParseError("--weights: expected " + std::to_string(inst.dim) + " integers");
        inst.weights = Eigen::Map<const GaugeWeights>(flags.weights.data(), inst.dim);
      }
      const ReduceOptions options{flags.tie_break_seed};
      auto t0 = Clock::now();
      const Splitting<F> s = inst.rational ? split_rational(*inst.rational, field, inst.weights, options)
                                           : split(*inst.laurent, field, inst.weights, options);
      const auto split_ms = elapsed_ms(t0);
      t0 = Clock::now();
      const VerifyReport checks = inst.rational ? verify_splitting(*inst.rational, s) : verify_splitting(*inst.laurent, s);
      const auto verify_ms = elapsed_ms(t0);
      if (!checks.all()) throw VerificationFailure("emitted certificate does not verify");

      Outcome o;
      o.document = Json{{"field", to_json(field)}, {"dim", inst.dim}};
      o.document.update(splitting_json(s, checks));
      Json meta = meta_json(inst.seed);
      meta["iterations"] = s.iterations;
      meta["iteration_bound"] = s.iteration_bound;
      if (g.timings) meta["timings_ms"] = Json{{"split", split_ms}, {"verify", verify_ms}};
      o.document["meta"] = std::move(meta);
      return o;
    });
  });
}

Outcome smb_file(const std::string& path, const SplitFlags& flags, const GlobalOptions& g) {
  return guarded(path, [&] {
    const Json j = load_json(path);
    const FieldSpec field = instance_field(j);
    return with_field(field, [&](auto tag) {
      using F = decltype(tag);
      Instance<F> inst = instance_from_json<F>(j, field);
      if (!inst.laurent) throw ParseError("matrix: smb needs Laurent entries; use split for rational functions");
      if (!flags.weights.empty()) {
        if (static_cast<Eigen::Index>(flags.weights.size()) != inst.dim)
          throw ParseError("--weights: expected " + std::to_string(inst.dim) + " integers");
        inst.weights = Eigen::Map<const GaugeWeights>(flags.weights.data(), inst.dim);
      }
      auto t0 = Clock::now();
      const Lattice<F> lattice(field, *inst.laurent, inst.weights);
      const SMBResult<F> s = smb(lattice, ReduceOptions{flags.tie_break_seed});
      const auto smb_ms = elapsed_ms(t0);
      const SMBChecks checks = check_smb(lattice, s);
      if (!checks.all()) throw VerificationFailure("successive minimum basis does not verify");

      Outcome o;
      o.document = Json{{"field", to_json(field)},
                        {"dim", inst.dim},
                        {"gauges", s.gauges},
                        {"omegas", matrix_to_json(s.omegas)},
                        {"U", matrix_to_json(s.U)},
                        {"pivot_rows", s.pivot_rows},
                        {"weights", to_vector(s.weights)},
                        {"checks", to_json(checks)}};
      Json meta = meta_json(inst.seed);
      meta["iterations"] = s.iterations;
      meta["iteration_bound"] = s.iteration_bound;
      if (g.timings) meta["timings_ms"] = Json{{"smb", smb_ms}};
      o.document["meta"] = std::move(meta);
      return o;
    });
  });
}

Outcome oracle_file(const std::string& path, int bound, const GlobalOptions& g) {
  return guarded(path, [&] {
    const Json j = load_json(path);
    const FieldSpec field = instance_field(j);
    if (!field.is_prime_field()) throw UnsupportedField("oracle enumeration needs a finite field, got Q");
    Instance<Fp> inst = instance_from_json<Fp>(j, field);

    // Rational entries: enumerate f*Lambda, whose minima are lower by deg f.
    LaurentMatrix<Fp> basis;
    int shift = 0;
    if (inst.rational) {
      const Poly<Fp> f = common_denominator(*inst.rational);
      basis = *clear_denominators(*inst.rational, f);
      shift = *f.degree();
    } else {
      basis = *inst.laurent;
    }
    const Lattice<Fp> lattice(field, basis, inst.weights);
    auto t0 = Clock::now();
    OracleReport report = brute_minima(lattice, bound);
    const auto oracle_ms = elapsed_ms(t0);
    const SMBResult<Fp> s = smb(lattice);
    const bool agree = oracle_compare(s.gauges, report);
    for (int& m : report.minima) m += shift;
    std::vector<int> gauges = s.gauges;
    for (int& x : gauges) x += shift;

    Outcome o;
    o.document = to_json(report);
    o.document["smb_gauges"] = gauges;
    o.document["agree"] = agree;
    Json meta = meta_json(inst.seed);
    if (g.timings) meta["timings_ms"] = Json{{"oracle", oracle_ms}};
    o.document["meta"] = std::move(meta);
    if (!agree) {
      o.code = kOracleDisagrees;
      o.error = path + ": oracle minima and SMB gauges disagree";
    }
    return o;
  });
}

Outcome verify_files(const std::string& instance_path, const std::string& result_path) {
  return guarded(result_path, [&] {
    const Json j = load_json(instance_path);
    const Json r = load_json(result_path);
    const FieldSpec field = instance_field(j);
    return with_field(field, [&](auto tag) {
      using F = decltype(tag);
      const Instance<F> inst = instance_from_json<F>(j, field);
      if (!r.is_object() || !r.contains("splitting_type") || !r.contains("W") || !r.contains("U"))
        throw ParseError("result: expected splitting_type, W and U");
      Splitting<F> s;
      for (std::size_t i = 0; i < r.at("splitting_type").size(); ++i)
        s.n.push_back(int_from_json(r.at("splitting_type")[i], "splitting_type[" + std::to_string(i) + "]"));
      if (static_cast<Eigen::Index>(s.n.size()) != inst.dim) throw ParseError("splitting_type: wrong length");
      s.W.resize(inst.dim, inst.dim);
      for_each_entry(r.at("W"), "W", inst.dim, [&](Eigen::Index a, Eigen::Index b, const Json& e, const std::string& p) {
        s.W(a, b) = laurent_from_json<F>(e, p, field);
      });
      s.U.resize(inst.dim, inst.dim);
      for_each_entry(r.at("U"), "U", inst.dim, [&](Eigen::Index a, Eigen::Index b, const Json& e, const std::string& p) {
        s.U(a, b) = poly_from_json<F>(e, p, field);
      });
      s.shift = r.contains("shift") ? int_from_json(r.at("shift"), "shift") : 0;
      s.scale = r.contains("scale") ? poly_from_json<F>(r.at("scale"), "scale", field) : Poly<F>(1);
      if (s.scale.is_zero()) throw ParseError("scale: must be nonzero");
      s.weights = inst.weights;
      if (r.contains("weights")) {
        const Json& w = r.at("weights");
        if (!w.is_array() || static_cast<Eigen::Index>(w.size()) != inst.dim) throw ParseError("weights: wrong length");
        for (Eigen::Index i = 0; i < inst.dim; ++i)
          s.weights(i) = int_from_json(w[static_cast<std::size_t>(i)], "weights[" + std::to_string(i) + "]");
      }
      const VerifyReport checks = inst.rational ? verify_splitting(*inst.rational, s) : verify_splitting(*inst.laurent, s);
      Outcome o;
      o.document = Json{{"checks", to_json(checks)}};
      if (!checks.all()) {
        o.code = kVerificationFailed;
        o.error = result_path + ": certificate does not verify";
      }
      return o;
    });
  });
}

FieldSpec parse_field_flag(std::string text) {
  if (text == "Q" || text == "q") return FieldSpec::rationals();
  for (const std::string prefix : {"Fp:", "Fp", "F_", "F"})
    if (text.rfind(prefix, 0) == 0) {
      text = text.substr(prefix.size());
      break;
    }
  try {
    std::size_t used = 0;
    const long long p = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return FieldSpec::prime(p);
  } catch (const std::exception&) {
    throw ParseError("--field: expected Q or F<p> with p prime, got \"" + text + "\"");
  }
}

Outcome gen_instance(std::uint64_t seed, int dim, int degree, const std::string& field_text, int mixes) {
  return guarded("gen", [&] {
    if (dim < 1 || degree < 0 || mixes < 0) throw ParseError("--dim >= 1, --deg >= 0, --unimodular-mixes >= 0 required");
    const FieldSpec field = parse_field_flag(field_text);
    const GenParams params{seed, dim, degree, mixes};
    return with_field(field, [&](auto tag) {
      using F = decltype(tag);
      const GeneratedInstance<F> g = generate_instance<F>(params, field);
      Outcome o;
      o.document = instance_to_json(field, g.matrix);
      o.document["expected"] = g.expected;
      o.document["seed"] = seed;
      o.document["generator"] = Json{{"deg", degree}, {"mixes", mixes}};
      return o;
    });
  });
}

// Runs fn over every path with at most `jobs` workers, keeping input order.
std::vector<Outcome> run_all(const std::vector<std::string>& paths, unsigned jobs,
                             const std::function<Outcome(const std::string&)>& fn) {
  std::vector<Outcome> results(paths.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < paths.size(); i = next++) results[i] = fn(paths[i]);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(paths.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

int emit(const std::vector<Outcome>& outcomes, const GlobalOptions& g, const std::string& output_path,
         std::ostream& out, std::ostream& err) {
  int code = kOk;
  std::ostringstream buffer;
  for (const auto& o : outcomes) {
    if (!o.error.empty()) err << "p1split: " << o.error << "\n";
    if (!o.document.is_null()) buffer << (g.pretty ? o.document.dump(2) : o.document.dump()) << "\n";
    code = std::max(code, o.code);
  }
  if (output_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(output_path, std::ios::binary);
    if (!file) {
      err << "p1split: cannot write " << output_path << "\n";
      return kParseError;
    }
    file << buffer.str();
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Splitting types of vector bundles on P^1 via successive minimum bases", "p1split"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("p1split ") + kVersion);

  GlobalOptions g;
  bool json_flag = false;
  app.add_flag("--json", json_flag, "Compact JSON output (default)");
  app.add_flag("--pretty", g.pretty, "Indented JSON output");
  app.add_flag("!--no-timings", g.timings, "Omit wall-clock timings from meta");
  app.add_option("--jobs", g.jobs, "Process instance files concurrently")->check(CLI::PositiveNumber);

  SplitFlags split_flags;
  std::vector<std::string> paths;
  std::string output_path;

  auto* split_cmd = app.add_subcommand("split", "Splitting type and certificate M = W D U");
  split_cmd->add_option("paths", paths, "Instance files")->required();
  split_cmd->add_option("--weights", split_flags.weights, "Diagonal norm weights, overrides the instance")->delimiter(',');
  split_cmd->add_option("--tie-break-seed", split_flags.tie_break_seed, "Randomize reduction tie-breaks (testing)");
  split_cmd->add_option("-o,--output", output_path, "Write the result here instead of stdout");

  auto* smb_cmd = app.add_subcommand("smb", "Successive minimum basis of the lattice");
  smb_cmd->add_option("paths", paths, "Instance files")->required();
  smb_cmd->add_option("--weights", split_flags.weights, "Diagonal norm weights, overrides the instance")->delimiter(',');
  smb_cmd->add_option("--tie-break-seed", split_flags.tie_break_seed, "Randomize reduction tie-breaks (testing)");
  smb_cmd->add_option("-o,--output", output_path, "Write the result here instead of stdout");

  std::string instance_path, result_path;
  auto* verify_cmd = app.add_subcommand("verify", "Re-check a result file against its instance");
  verify_cmd->add_option("instance", instance_path, "Instance file")->required();
  verify_cmd->add_option("result", result_path, "Result file produced by split")->required();

  int bound = 4;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force successive minima over a finite field");
  oracle_cmd->add_option("paths", paths, "Instance files")->required();
  oracle_cmd->add_option("--bound", bound, "Maximal degree of enumerated coefficients")->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("-o,--output", output_path, "Write the report here instead of stdout");

  std::uint64_t seed = 1;
  int dim = 2, degree = 2, mixes = 4;
  std::string field_text = "F2";
  auto* gen_cmd = app.add_subcommand("gen", "Random instance with known splitting type");
  gen_cmd->add_option("--seed", seed, "RNG seed (P1SPLIT_SEED overrides)");
  gen_cmd->add_option("--dim", dim, "Rank d");
  gen_cmd->add_option("--deg", degree, "Diagonal exponents drawn from [-deg, deg]");
  gen_cmd->add_option("--field", field_text, "Q or F<p>, e.g. F7");
  gen_cmd->add_option("--unimodular-mixes", mixes, "Number of random basis changes");
  gen_cmd->add_option("-o,--output", output_path, "Write the instance here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "p1split: " << e.what() << "\n";
    return kParseError;
  }

  if (*split_cmd) {
    return emit(run_all(paths, g.jobs, [&](const std::string& p) { return split_file(p, split_flags, g); }), g,
                output_path, out, err);
  }
  if (*smb_cmd) {
    return emit(run_all(paths, g.jobs, [&](const std::string& p) { return smb_file(p, split_flags, g); }), g,
                output_path, out, err);
  }
  if (*oracle_cmd) {
    return emit(run_all(paths, g.jobs, [&](const std::string& p) { return oracle_file(p, bound, g); }), g,
                output_path, out, err);
  }
  if (*verify_cmd) return emit({verify_files(instance_path, result_path)}, g, "", out, err);

  if (const char* env = std::getenv("P1SPLIT_SEED")) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "p1split: P1SPLIT_SEED is not an unsigned integer\n";
      return kParseError;
    }
  }
  return emit({gen_instance(seed, dim, degree, field_text, mixes)}, g, output_path, out, err);
}

}  // namespace p1split::cli
