// steinitz: command-line front end. Every command prints one JSON envelope on
// stdout; diagnostics go to stderr.
//
// Exit codes: 0 success, 1 property violation, 2 invalid input,
// 3 sampling or search exhaustion, 4 invalid ramification data.

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "steinitz/io.hpp"
#include "steinitz/steinitz.hpp"

namespace {

using namespace steinitz;
using io::Json;

enum Exit : int { kOk = 0, kViolation = 1, kInvalid = 2, kExhausted = 3, kBadRamification = 4 };

struct GroupArgs {
  std::string family = "semidirect";
  Int l = 3;
  Int n = 2;

  GroupSpec spec() const {
    if (family == "semidirect") return GroupSpec::semidirect(l, n);
    if (family == "heisenberg") return GroupSpec::heisenberg(l);
    throw InvalidInput("unknown group family '" + family + "' (expected semidirect or heisenberg)");
  }

  Json echo() const {
    Json j;
    j["group"] = family;
    j["l"] = l;
    if (family == "semidirect") j["n"] = n;
    return j;
  }
};

void add_group_options(CLI::App* cmd, GroupArgs& g) {
  cmd->add_option("--group", g.family, "semidirect (C(l^n) x| C(l)) or heisenberg")->capture_default_str();
  cmd->add_option("--l", g.l, "odd prime l")->capture_default_str();
  cmd->add_option("--n", g.n, "n >= 2 for the semidirect family")->capture_default_str();
}

FieldContext make_context(Int d) {
  const Field k = Field::from_d(d);
  return FieldContext(io::load_or_compute(k, io::cache_dir_from_env()));
}

std::vector<std::pair<Int, Int>> parse_ram(const std::string& text) {
  std::vector<std::pair<Int, Int>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InvalidInput("ramification entry '" + item + "' is not of the form p:e");
    try {
      out.emplace_back(std::stoll(item.substr(0, colon)), std::stoll(item.substr(colon + 1)));
    } catch (const std::logic_error&) {
      throw InvalidInput("ramification entry '" + item + "' is not of the form p:e");
    }
  }
  return out;
}

Form parse_form(const std::string& text) {
  std::vector<Int> parts;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) parts.push_back(std::stoll(item));
  } catch (const std::logic_error&) {
    throw InvalidInput("target '" + text + "' is not of the form a,b,c");
  }
  if (parts.size() != 3) throw InvalidInput("target '" + text + "' is not of the form a,b,c");
  return {parts[0], parts[1], parts[2]};
}

Json realizable_json(const RealizableResult& rt) {
  Json j;
  j["group"] = rt.spec.name();
  j["w_modulus"] = rt.w_modulus;
  j["exponent"] = rt.exponent;
  j["w"] = io::to_json(rt.w);
  j["realizable"] = io::to_json(rt.result);
  return j;
}

class Envelope {
 public:
  Envelope(std::string command, bool timing) : command_(std::move(command)), timing_(timing) {
    start_ = std::chrono::steady_clock::now();
  }

  Json input;
  Json result;
  std::optional<Json> certificate;

  int emit(int code, const std::optional<std::string>& error_kind = std::nullopt, const std::string& message = {}) {
    Json j;
    j["command"] = command_;
    j["input"] = input;
    if (error_kind) {
      Json e;
      e["kind"] = *error_kind;
      e["message"] = message;
      j["error"] = e;
      std::cerr << "steinitz " << command_ << ": " << message << "\n";
    }
    if (!result.is_null()) j["result"] = result;
    if (certificate) j["certificate"] = *certificate;
    j["exit_code"] = code;
    j["version"] = kVersion;
    if (timing_) {
      auto elapsed = std::chrono::steady_clock::now() - start_;
      j["timing_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    }
    std::cout << j.dump(2) << "\n";
    return code;
  }

 private:
  std::string command_;
  bool timing_;
  std::chrono::steady_clock::time_point start_;
};

// Maps library exceptions onto exit codes.
template <class Body>
int run_guarded(Envelope& env, Body&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    return env.emit(kBadRamification, "validation", e.what());
  } catch (const SamplingExhausted& e) {
    return env.emit(kExhausted, "sampling_exhausted", e.what());
  } catch (const InvalidInput& e) {
    return env.emit(kInvalid, "invalid_input", e.what());
  } catch (const Error& e) {
    return env.emit(kInvalid, "error", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Realizable Steinitz classes over imaginary quadratic fields"};
  app.require_subcommand(1);
  bool timing = false;
  app.add_flag("--timing", timing, "include wall-clock timing in the output (breaks byte-stability)");

  Int d = -23;
  Int m = 1;
  GroupArgs group;
  std::string ram_text;
  std::string target_text;
  Int avoid = 1;
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::vector<Int> verify_fields;
  Int samples = 1000;

  auto* cg = app.add_subcommand("classgroup", "class group of Q(sqrt(d))");
  cg->add_option("--d", d, "squarefree negative integer")->required();

  auto* wg = app.add_subcommand("wgroup", "W(k, m): classes containing primes split completely in k(zeta_m)");
  wg->add_option("--d", d, "squarefree negative integer")->required();
  wg->add_option("--m", m, "cyclotomic modulus m >= 1")->required();

  auto* rz = app.add_subcommand("realizable", "realizable Steinitz classes R_t(k, G)");
  rz->add_option("--d", d, "squarefree negative integer")->required();
  add_group_options(rz, group);

  auto* st = app.add_subcommand("steinitz", "Steinitz class of a tame G-extension from its ramification data");
  st->add_option("--d", d, "squarefree negative integer")->required();
  add_group_options(st, group);
  st->add_option("--ram", ram_text, "comma-separated p:e pairs, e.g. \"37:9,7:3\"");

  auto* vf = app.add_subcommand("verify", "run property suites");
  vf->add_option("--suite", suite, "congruenza|wexp|potenzagalois|troppo|eciclo|ln1|ramifl|presentation|all")
      ->capture_default_str();
  vf->add_option("--seed", seed, "seed for randomized suites")->capture_default_str();
  vf->add_option("--d", verify_fields, "restrict the field grid (repeatable)");
  vf->add_option("--samples", samples, "random ramification data sets per field and group")->capture_default_str();

  auto* wt = app.add_subcommand("witness", "ramification data realizing a target class");
  wt->add_option("--d", d, "squarefree negative integer")->required();
  add_group_options(wt, group);
  wt->add_option("--target", target_text, "target class as a,b,c")->required();
  wt->add_option("--avoid", avoid, "witness primes must not divide this integer")->capture_default_str();
  wt->add_option("--seed", seed, "accepted for interface symmetry; the search is deterministic");

  auto* gg = app.add_subcommand("goodgroup", "class-level good-group property report");
  gg->add_option("--d", d, "squarefree negative integer")->required();
  add_group_options(gg, group);
  gg->add_option("--seed", seed, "sampling seed")->capture_default_str();
  gg->add_option("--samples", samples, "random ramification data sets")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  if (cg->parsed()) {
    Envelope env("classgroup", timing);
    env.input["d"] = d;
    return run_guarded(env, [&] {
      const auto ctx = make_context(d);
      env.result = io::to_json(ctx.class_group());
      return env.emit(kOk);
    });
  }

  if (wg->parsed()) {
    Envelope env("wgroup", timing);
    env.input["d"] = d;
    env.input["m"] = m;
    return run_guarded(env, [&] {
      const auto ctx = make_context(d);
      const auto& w = ctx.w(m);
      env.result = io::to_json(w);
      env.result["h"] = ctx.class_group().h();
      env.certificate = io::to_json(w.certificate);
      return env.emit(kOk);
    });
  }

  if (rz->parsed()) {
    Envelope env("realizable", timing);
    env.input = group.echo();
    env.input["d"] = d;
    return run_guarded(env, [&] {
      const auto ctx = make_context(d);
      const auto rt = realizable(ctx, group.spec());
      env.result = realizable_json(rt);
      env.certificate = io::to_json(rt.w.certificate);
      return env.emit(kOk);
    });
  }

  if (st->parsed()) {
    Envelope env("steinitz", timing);
    env.input = group.echo();
    env.input["d"] = d;
    env.input["ram"] = ram_text;
    return run_guarded(env, [&] {
      const auto spec = group.spec();
      const auto ctx = make_context(d);
      RamData ram{ctx.field(), spec, {}};
      for (auto [p, e] : parse_ram(ram_text)) {
        PrimeIdeal q{p, 0};
        if (p >= 2 && is_prime(p) && kronecker(ctx.field().D, p) == 1) q = split_prime(ctx.field(), p);
        ram.data.push_back({q, e});
      }
      const auto report = validate_ram_data(ctx, ram);
      env.result["validation"] = io::to_json(report);
      if (!report.ok()) return env.emit(kBadRamification, "validation", report.first_failure());
      const auto rt = realizable(ctx, spec);
      const Form cls = steinitz_class(ctx, ram);
      env.result["steinitz_class"] = io::to_json(cls);
      env.result["member"] = rt.result.contains(cls);
      env.result["realizable"] = io::to_json(rt.result);
      env.certificate = io::to_json(rt.w.certificate);
      return env.emit(kOk);
    });
  }

  if (vf->parsed()) {
    Envelope env("verify", timing);
    env.input["suite"] = suite;
    env.input["seed"] = seed;
    env.input["samples"] = samples;
    if (!verify_fields.empty()) env.input["fields"] = verify_fields;
    return run_guarded(env, [&] {
      VerifyOptions opts;
      opts.seed = seed;
      opts.soundness_samples = samples;
      if (!verify_fields.empty()) opts.fields = verify_fields;
      std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
      FieldPool pool;
      Json suites = Json::array();
      bool passed = true;
      for (const auto& name : names) {
        const auto rep = run_suite(name, opts, pool);
        passed = passed && rep.passed();
        suites.push_back(io::to_json(rep));
      }
      env.result["passed"] = passed;
      env.result["suites"] = suites;
      if (!passed) return env.emit(kViolation, "violation", "property violations found");
      return env.emit(kOk);
    });
  }

  if (wt->parsed()) {
    Envelope env("witness", timing);
    env.input = group.echo();
    env.input["d"] = d;
    env.input["target"] = target_text;
    env.input["avoid"] = avoid;
    return run_guarded(env, [&] {
      const auto spec = group.spec();
      const auto ctx = make_context(d);
      const Form target = parse_form(target_text);
      if (target.discriminant() != ctx.field().D || !ctx.class_group().contains(target))
        throw InvalidInput("target " + to_string(target) + " is not a class of discriminant " +
                           std::to_string(ctx.field().D));
      const auto rt = realizable(ctx, spec);
      env.certificate = io::to_json(rt.w.certificate);
      if (!rt.result.contains(target))
        return env.emit(kInvalid, "not_realizable", "target " + to_string(reduce(target)) + " is not in R_t");
      const auto w = witness_search(ctx, spec, target, avoid);
      if (!w) return env.emit(kExhausted, "search_exhausted", "SEARCH_EXHAUSTED");
      env.result["target"] = io::to_json(reduce(target));
      env.result["witness"] = io::to_json(*w);
      env.result["steinitz_class"] = io::to_json(steinitz_class(ctx, *w));
      return env.emit(kOk);
    });
  }

  if (gg->parsed()) {
    Envelope env("goodgroup", timing);
    env.input = group.echo();
    env.input["d"] = d;
    env.input["seed"] = seed;
    env.input["samples"] = samples;
    return run_guarded(env, [&] {
      const auto ctx = make_context(d);
      GoodGroupOptions opts;
      opts.seed = seed;
      opts.samples = samples;
      const auto rep = good_group_report(ctx, group.spec(), opts);
      env.result = io::to_json(rep);
      if (!rep.passed()) return env.emit(kViolation, "violation", "good-group property failed");
      return env.emit(kOk);
    });
  }
  return kInvalid;
}
