// reesdual: command-line front end. Reports go to stdout as JSON, a short summary and
// timings to stderr.
#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "reesdual/reesdual.hpp"

using namespace reesdual;

namespace {

enum Exit : int { kOk = 0, kHypothesis = 1, kParse = 2, kResource = 3, kCrossCheck = 4 };

struct Options {
  std::string file;
  std::string method = "mjd";
  std::string mode = "greedy";
  bool verify = false;
  bool inject = false;
  std::uint64_t seed = 1;
  int d = 2, m = 1, e = 1;
  std::string field = "Q";
  GroebnerOptions gb;
};

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Raised after the report is written, to select exit status 4.
struct CrossCheckFailed {};

template <class K>
using Named = std::vector<std::pair<std::string, Poly<K>>>;

template <class K>
json generators_json(const Named<K>& gens) {
  json arr = json::array();
  for (const auto& [name, p] : gens) arr.push_back(poly_json(name, p));
  return arr;
}

template <class K>
IdealGens<K> ideal_of(const RingPtr<K>& ring, const Named<K>& gens) {
  IdealGens<K> out(ring);
  for (const auto& g : gens) out.add(g.second);
  return out;
}

template <class K>
HypothesisReport check(const InstanceModule<K>& inst, bool module, const GroebnerOptions& opt) {
  return module ? check_module_instance(inst, opt) : check_ideal_instance(inst, opt);
}

template <class K>
Named<K> symmetric_part(const InstanceModule<K>& inst) {
  Named<K> out;
  auto ells = ell_forms(inst);
  for (std::size_t j = 0; j < ells.size(); ++j) out.push_back({"l" + std::to_string(j + 1), ells[j]});
  out.push_back({"f", inst.f});
  return out;
}

template <class K>
Named<K> mjd_generators(const InstanceModule<K>& inst, const std::vector<IterationState<K>>& states) {
  Named<K> out = symmetric_part(inst);
  bool square = !states.empty() && !states.front().F.is_zero();
  if (square) {
    for (const auto& s : states) out.push_back({"F" + std::to_string(s.step), s.F});
    return out;
  }
  // general shape: L_m already carries the minors of earlier steps
  const auto& last = states.back();
  std::size_t k = 0;
  for (std::size_t i = out.size(); i < last.L.gens.size(); ++i) out.push_back({"u" + std::to_string(++k), last.L.gens[i]});
  for (const auto& u : last.minors) out.push_back({"u" + std::to_string(++k), u});
  return out;
}

/// F_e = c * F_g; nullopt when the two are not scalar multiples.
template <class K>
std::optional<K> unit_ratio(const Poly<K>& e, const Poly<K>& g) {
  if (e.is_zero() || g.is_zero() || !(e.monic() == g.monic())) return std::nullopt;
  return e.leading().c * g.leading().c.inverse();
}

template <class K>
json fiber_json(const IdealGens<K>& ideal, const GroebnerOptions& opt) {
  json j;
  try {
    auto fib = special_fiber(ideal);
    j["generator"] = fib.generator.to_string();
    j["degree"] = fib.degree;
    j["source"] = "generator list";
    return j;
  } catch (const HypothesisViolation&) {
  }
  auto elim = fiber_by_elimination(ideal, opt);
  if (elim.size() == 1) {
    auto bd = elim.gens.front().bidegree();
    j["generator"] = elim.gens.front().to_string();
    j["degree"] = bd.deg.t;
  } else {
    j["generator"] = nullptr;
    j["degree"] = nullptr;
    j["generators"] = elim.size();
  }
  j["source"] = "elimination";
  return j;
}

PartialMode parse_mode(const std::string& s) { return s == "euler" ? PartialMode::euler : PartialMode::greedy; }

template <class K>
struct Computed {
  Named<K> gens;
  json extra = json::object();
};

template <class K>
Computed<K> compute(const InstanceModule<K>& inst, bool module, const Options& o) {
  const auto mode = parse_mode(o.mode);
  Computed<K> out;
  if (o.method == "mjd") {
    auto states = mjd_iterations(static_cast<const InstanceIdeal<K>&>(inst), mode);
    out.gens = mjd_generators(inst, states);
    if (mode == PartialMode::euler) {
      // columns from (1/a)∂F can differ from the greedy split by units; say so
      auto greedy = mjd_iterations(static_cast<const InstanceIdeal<K>&>(inst), PartialMode::greedy);
      json flags = json::array();
      for (std::size_t i = 0; i < states.size() && i < greedy.size(); ++i) {
        if (states[i].F.is_zero() || states[i].F == greedy[i].F) continue;
        auto c = unit_ratio(states[i].F, greedy[i].F);
        json fl;
        fl["generator"] = "F" + std::to_string(states[i].step);
        if (c) fl["scalar_vs_greedy"] = c->to_string();
        else fl["scalar_vs_greedy"] = nullptr;
        flags.push_back(std::move(fl));
      }
      out.extra["euler_unit_flags"] = std::move(flags);
    }
  } else if (o.method == "matrix") {
    auto mi = matrix_iterations(static_cast<const InstanceIdeal<K>&>(inst), inst.m, mode);
    const std::size_t ells = inst.psi.cols();
    for (std::size_t k = 0; k < mi.ideal.gens.size(); ++k) {
      std::string name = k < ells ? "l" + std::to_string(k + 1) : k == ells ? "f" : "minor" + std::to_string(k - ells);
      out.gens.push_back({name, mi.ideal.gens[k]});
    }
    out.extra["matrix_columns"] = mi.B.cols();
  } else {
    if (module && inst.e != 1) throw HypothesisViolation("the differential operator method needs an ideal instance (e = 1)");
    auto df = diffop_iterations(static_cast<const InstanceIdeal<K>&>(inst));
    out.gens = symmetric_part(inst);
    for (std::size_t i = 0; i < df.powers.size(); ++i) out.gens.push_back({"D" + std::to_string(i + 1), df.powers[i]});
  }
  return out;
}

json base_report(const std::string& command, const InstanceFile& file) {
  json r;
  r["command"] = command;
  r["instance"] = to_json(file);
  return r;
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

template <class K>
int cmd_hypotheses(const InstanceFile& file, const InstanceModule<K>& inst, const Options& o) {
  Stopwatch sw;
  bool module = file.kind == "module";
  auto rep = check(inst, module, o.gb);
  json r = base_report("hypotheses", file);
  r["status"] = rep.overall ? "ok" : "hypothesis_failure";
  r["hypotheses"] = to_json(rep);
  emit(r);
  std::cerr << "hypotheses: " << (rep.overall ? "pass" : "fail (" + rep.failed_names() + ")")
            << (rep.linear_type ? " [linear type or out of scope]" : "") << ", " << sw.seconds() << " s\n";
  return rep.overall ? kOk : kHypothesis;
}

template <class K>
json saturation_json(const InstanceModule<K>& inst, const IdealGens<K>& ideal, const SaturationResult<K>& sat,
                     const GroebnerOptions& opt, bool& equal) {
  equal = ideal_equal(ideal, sat.ideal, opt);
  json v;
  v["equal"] = equal;
  v["saturation_index"] = sat.index;
  v["index_equals_m"] = sat.index == inst.m;
  v["index_bound"] = saturation_index_bound(x_degrees(symmetric_ideal(inst)), inst.ring->vars.x_count());
  return v;
}

template <class K>
int cmd_iterate(const InstanceFile& file, const InstanceModule<K>& inst, const Options& o) {
  Stopwatch sw;
  bool module = file.kind == "module";
  json r = base_report("iterate", file);
  r["method"] = o.method;
  r["mode"] = o.mode;
  auto rep = check(inst, module, o.gb);
  r["hypotheses"] = to_json(rep);
  if (!rep.overall) throw HypothesisFailure(rep);
  auto c = compute(inst, module, o);
  auto ideal = ideal_of(inst.ring, c.gens);
  r["status"] = "ok";
  r["generators"] = generators_json(c.gens);
  r["fiber"] = fiber_json(ideal, o.gb);
  for (auto& [k, v] : c.extra.items()) r[k] = v;
  bool ok = true;
  if (o.verify) {
    auto sat = oracle_saturation(static_cast<const InstanceIdeal<K>&>(inst), o.gb);
    bool equal = false;
    r["verify"] = saturation_json(inst, ideal, sat, o.gb, equal);
    ok = equal;
    if (!ok) r["status"] = "cross_check_failure";
  }
  emit(r);
  std::cerr << "iterate (" << o.method << ", " << o.mode << "): " << c.gens.size() << " generators, fiber degree "
            << r["fiber"]["degree"].dump() << (o.verify ? std::string(", oracle ") + (ok ? "equal" : "NOT equal") : "")
            << ", " << sw.seconds() << " s\n";
  if (!ok) throw CrossCheckFailed{};
  return kOk;
}

template <class K>
int cmd_verify(const InstanceFile& file, const InstanceModule<K>& inst, const Options& o) {
  Stopwatch sw;
  bool module = file.kind == "module";
  json r = base_report("verify", file);
  auto rep = check(inst, module, o.gb);
  r["hypotheses"] = to_json(rep);
  if (!rep.overall) throw HypothesisFailure(rep);
  Options mjd = o;
  mjd.method = "mjd";
  auto c = compute(inst, module, mjd);
  if (o.inject) {
    // negative control: the last generator is replaced by a multiple of itself
    auto& last = c.gens.back();
    last.first += "*x1";
    last.second = last.second * Poly<K>::variable(inst.ring, inst.ring->vars.x(0));
    r["injected"] = last.first;
  }
  auto ideal = ideal_of(inst.ring, c.gens);
  auto sat = oracle_saturation(static_cast<const InstanceIdeal<K>&>(inst), o.gb);
  bool equal = false;
  auto v = saturation_json(inst, ideal, sat, o.gb, equal);
  bool ok = equal && sat.index == inst.m;
  r["status"] = ok ? "ok" : "cross_check_failure";
  r["generators"] = generators_json(c.gens);
  r["verify"] = v;
  emit(r);
  std::cerr << "verify: " << (equal ? "equal" : "NOT equal") << ", saturation index " << sat.index << " (m = " << inst.m
            << "), " << sw.seconds() << " s\n";
  if (!ok) throw CrossCheckFailed{};
  return kOk;
}

template <class K>
int cmd_bourbaki(const InstanceFile& file, const InstanceModule<K>& inst, const Options& o) {
  Stopwatch sw;
  json r = base_report("bourbaki", file);
  r["seed"] = o.seed;
  auto res = module_defining_ideal(inst, o.seed, parse_mode(o.mode), o.gb);
  r["hypotheses"] = to_json(res.report);
  json red;
  red["attempts"] = res.reduction.attempts;
  json Z = json::array();
  for (const auto& row : res.reduction.Z) {
    json jr = json::array();
    for (const auto& z : row) jr.push_back(z.to_string());
    Z.push_back(std::move(jr));
  }
  red["Z"] = std::move(Z);
  red["psi_I"] = matrix_json(res.reduction.ideal.psi);
  json Y = json::array();
  for (const auto& y : res.reduction.Y) Y.push_back(y.to_string());
  red["Y"] = std::move(Y);
  r["reduction"] = std::move(red);
  auto gens = mjd_generators(inst, res.states);
  r["generators"] = generators_json(gens);
  Named<K> side;
  for (std::size_t k = 0; k < res.ideal_side.gens.size(); ++k)
    side.push_back({"g" + std::to_string(k + 1), res.ideal_side.gens[k]});
  r["ideal_side"] = generators_json(side);
  r["fiber"] = fiber_json(res.J, o.gb);
  r["cross_check"] = res.cross_check;
  r["status"] = res.cross_check ? "ok" : "cross_check_failure";
  emit(r);
  std::cerr << "bourbaki (seed " << o.seed << ", " << res.reduction.attempts << " draws): cross-check "
            << (res.cross_check ? "pass" : "FAIL") << ", " << sw.seconds() << " s\n";
  if (!res.cross_check) throw CrossCheckFailed{};
  return kOk;
}

template <class K>
int cmd_random(const Options& o, FieldOf<K> field) {
  Stopwatch sw;
  InstanceFile f;
  if (o.e == 1) f = to_instance_file(as_module(random_instance<K>(o.d, o.m, o.seed, field, 50, o.gb)), false);
  else f = to_instance_file(random_module_instance<K>(o.d, o.e, o.m, o.seed, field, 50, o.gb), true);
  emit(to_json(f));
  std::cerr << "random: d = " << o.d << ", m = " << o.m << ", e = " << o.e << ", seed " << o.seed << ", "
            << sw.seconds() << " s\n";
  return kOk;
}

template <class K>
int run_file(const std::string& command, const InstanceFile& file, FieldOf<K> field, const Options& o) {
  auto inst = build_instance<K>(file, field);
  if (command == "hypotheses") return cmd_hypotheses(file, inst, o);
  if (command == "iterate") return cmd_iterate(file, inst, o);
  if (command == "verify") return cmd_verify(file, inst, o);
  return cmd_bourbaki(file, inst, o);
}

int dispatch(const std::string& command, const Options& o) {
  if (command == "random") {
    auto fs = parse_field(o.field);
    return fs.rational() ? cmd_random<Rational>(o, RationalField{}) : cmd_random<ModP>(o, PrimeField{fs.p});
  }
  auto file = read_instance_file(o.file);
  auto fs = parse_field(file.field);
  if (fs.rational()) return run_file<Rational>(command, file, RationalField{}, o);
  return run_file<ModP>(command, file, PrimeField{fs.p}, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Defining ideals of Rees algebras over hypersurface rings"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--max-basis", o.gb.max_basis, "cap on Groebner basis size")->capture_default_str();
  app.add_option("--max-pairs", o.gb.max_pairs, "cap on processed S-pairs")->capture_default_str();

  auto* hyp = app.add_subcommand("hypotheses", "check the hypotheses of an instance file");
  hyp->add_option("file", o.file)->required();

  auto* it = app.add_subcommand("iterate", "compute the defining ideal");
  it->add_option("file", o.file)->required();
  it->add_option("--method", o.method)->check(CLI::IsMember({"mjd", "matrix", "diffop"}))->capture_default_str();
  it->add_option("--mode", o.mode)->check(CLI::IsMember({"greedy", "euler"}))->capture_default_str();
  it->add_flag("--verify", o.verify, "compare against the saturation oracle");

  auto* ver = app.add_subcommand("verify", "compare the iteration with the saturation oracle");
  ver->add_option("file", o.file)->required();
  ver->add_option("--mode", o.mode)->check(CLI::IsMember({"greedy", "euler"}))->capture_default_str();
  ver->add_flag("--inject", o.inject, "corrupt the generator list (negative control)");

  auto* bou = app.add_subcommand("bourbaki", "module pipeline through a Bourbaki ideal");
  bou->add_option("file", o.file)->required();
  bou->add_option("--seed", o.seed)->required();
  bou->add_option("--mode", o.mode)->check(CLI::IsMember({"greedy", "euler"}))->capture_default_str();

  auto* rnd = app.add_subcommand("random", "print a random instance passing the hypotheses");
  rnd->add_option("--d", o.d)->required()->check(CLI::Range(2, 6));
  rnd->add_option("--m", o.m)->required()->check(CLI::Range(1, 12));
  rnd->add_option("--e", o.e)->check(CLI::Range(1, 6))->capture_default_str();
  rnd->add_option("--seed", o.seed)->required();
  rnd->add_option("--field", o.field)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }
  std::string command = app.get_subcommands().front()->get_name();

  try {
    return dispatch(command, o);
  } catch (const InstanceFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const HypothesisFailure& e) {
    json r;
    r["command"] = command;
    r["status"] = "hypothesis_failure";
    r["hypotheses"] = to_json(e.report);
    emit(r);
    std::cerr << "error: " << e.what() << "\n";
    return kHypothesis;
  } catch (const HypothesisViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kHypothesis;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kHypothesis;
  } catch (const ResourceLimitExceeded& e) {
    std::cerr << "error: resource cap exceeded: " << e.what() << "\n";
    return kResource;
  } catch (const RetryBudgetExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const CrossCheckFailed&) {
    return kCrossCheck;
  }
}
