// klsf: construct, verify, classify, enumerate, covering, spectral, reproduce.
//
// Exit codes: 0 success, 1 parameter error, 2 failed self-check, 3 mathematical finding.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "klsf/klsf.hpp"

namespace {

using klsf::Json;

enum Exit { kOk = 0, kParameter = 1, kCheck = 2, kFinding = 3 };

int combine(int a, int b) {
  if (a == kCheck || b == kCheck) return kCheck;
  if (a == kFinding || b == kFinding) return kFinding;
  return kOk;
}

struct Outcome {
  Json result;
  int code = kOk;
  std::string text;  // human-readable line for stdout, if any
  std::string csv;
};

/// "(1,0),(0,1)" -> [[1,0],[0,1]]
Json parse_points(const std::string& text) {
  Json out = Json::array();
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] == ',') {
      ++pos;
      continue;
    }
    if (s[pos] != '(') throw klsf::ParameterError("points must look like (a,b),(c,d)");
    const auto close = s.find(')', pos);
    if (close == std::string::npos) throw klsf::ParameterError("unterminated point");
    Json pt = Json::array();
    const std::string body = s.substr(pos + 1, close - pos - 1);
    if (!body.empty())
      for (auto tok : klsf::detail::split(body, ',')) pt.push_back(klsf::detail::parse_uint(tok, "coordinate"));
    out.push_back(pt);
    pos = close + 1;
  }
  return out;
}

std::vector<klsf::Point> to_points(const Json& j) {
  std::vector<klsf::Point> out;
  for (const auto& pt : j) {
    klsf::Point x;
    for (const auto& c : pt) x.push_back(c.get<klsf::Residue>());
    out.push_back(x);
  }
  return out;
}

template <class T>
T need(const Json& item, const char* key) {
  if (!item.contains(key)) throw klsf::ParameterError(std::string("missing --") + key);
  try {
    return item.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw klsf::ParameterError(std::string("bad value for ") + key);
  }
}

template <class T>
T get_or(const Json& item, const char* key, T fallback) {
  return item.contains(key) ? need<T>(item, key) : fallback;
}

klsf::Params params_of(const Json& item) {
  auto q = klsf::Params::make(need<unsigned>(item, "k"), need<unsigned>(item, "l"), need<klsf::Residue>(item, "p"),
                              get_or<unsigned>(item, "n", 1));
  q.validate();
  return q;
}

klsf::VecSet set_of(const Json& item) { return klsf::parse_vec_set(need<std::string>(item, "set")); }

Outcome do_construct(const Json& item) {
  const auto q = params_of(item);
  const auto type = need<std::string>(item, "type");
  Outcome o;
  if (type == "cuboid") {
    const klsf::CuboidSpec spec{q, get_or<unsigned>(item, "j", 0)};
    const auto set = klsf::gen_cuboid(spec);
    o.result = klsf::cuboid_record(spec, set);
    o.text = klsf::to_literal(set);
    return o;
  }
  klsf::TypeSpec spec;
  spec.which = klsf::parse_structure(type);
  spec.params = q;
  if (item.contains("a")) spec.start = need<klsf::Residue>(item, "a");
  if (item.contains("V")) spec.subspace = to_points(item["V"]);
  spec.s = get_or<unsigned>(item, "s", 0);
  if (item.contains("P")) spec.pset = to_points(item["P"]);
  const auto g = klsf::gen_type(spec);
  o.result = klsf::generated_record(spec, g, q);
  o.text = klsf::to_literal(g.set);
  if (!o.result["sumfree"].get<bool>()) o.code = kCheck;
  return o;
}

Outcome do_verify(const Json& item) {
  const auto set = set_of(item);
  const unsigned k = need<unsigned>(item, "k"), l = need<unsigned>(item, "l");
  Outcome o;
  const bool sf = klsf::is_kl_sumfree(set, k, l);
  o.result = Json{{"set", klsf::to_literal(set)}, {"k", k}, {"l", l}, {"size", set.size()}, {"sumfree", sf}};
  if (sf && !set.empty()) {
    const auto q = klsf::Params::make(k, l, set.modulus(), set.dim());
    if (q.cuboid_range()) {
      const auto v = klsf::nontriviality_check(set, q);
      o.result["nontrivial"] = v.nontrivial;
      if (v.witness) o.result["cuboid_j"] = v.witness->j;
    }
  }
  o.text = sf ? "sum-free" : "not sum-free";
  o.code = sf ? kOk : kCheck;
  return o;
}

Outcome do_classify(const Json& item) {
  const auto set = set_of(item);
  Outcome o;
  const auto r = klsf::classify(set, need<unsigned>(item, "k"), need<unsigned>(item, "l"));
  o.result = klsf::to_json(r);
  o.result["set"] = klsf::to_literal(set);
  o.text = klsf::label_name(r.label);
  return o;
}

Outcome do_enumerate(const Json& item, unsigned threads) {
  const auto q = params_of(item);
  klsf::SearchOptions opt;
  opt.threads = threads;
  opt.p_limit = get_or<klsf::Residue>(item, "p_limit", opt.p_limit);
  const auto level = get_or<std::string>(item, "level", "max");
  klsf::SearchResult r;
  if (level == "max")
    r = klsf::enumerate_max(q, opt);
  else if (level == "second")
    r = klsf::enumerate_second_level(q, opt);
  else
    throw klsf::ParameterError("--level must be max or second");
  Outcome o;
  o.result = klsf::to_json(r);
  o.result["level"] = level;
  std::ostringstream csv;
  klsf::write_orbit_csv(csv, r);
  o.csv = csv.str();
  o.code = r.findings.empty() ? kOk : kFinding;
  return o;
}

Outcome do_covering(const Json& item) {
  Outcome o;
  if (item.contains("set")) {
    const auto v = klsf::covering_verdict(set_of(item).to_zp());
    o.result = klsf::to_json(v);
    o.text = v.covered ? "covered" : "not covered";
    o.code = v.covered ? kOk : kFinding;
    return o;
  }
  const auto p = need<klsf::Residue>(item, "p");
  const auto c = klsf::Density::parse(get_or<std::string>(item, "c", "1/3"));
  const auto mode = get_or<std::string>(item, "mode", p <= 31 ? "exhaustive" : "sampled");
  klsf::TauScan scan;
  if (mode == "exhaustive")
    scan = klsf::tau_scan_exhaustive(p, c, get_or<klsf::Residue>(item, "p_limit", 31));
  else if (mode == "sampled")
    scan = klsf::tau_scan_sampled(p, c, get_or<std::uint64_t>(item, "trials", 100000),
                                  get_or<std::uint64_t>(item, "seed", klsf::acceptance::kSampledSeed));
  else
    throw klsf::ParameterError("--mode must be exhaustive or sampled");
  o.result = klsf::to_json(scan);
  std::ostringstream csv;
  klsf::write_tau_csv(csv, scan);
  o.csv = csv.str();
  o.code = scan.violations.empty() ? kOk : kFinding;
  return o;
}

Outcome do_spectral(const Json& item) {
  const auto set = set_of(item);
  const unsigned k = need<unsigned>(item, "k"), l = need<unsigned>(item, "l");
  klsf::require_k_gt_l(k, l);
  Outcome o;
  const auto check = klsf::verify_spectral_lemma(set, k, l);
  o.result = klsf::to_json(check);
  o.result["set"] = klsf::to_literal(set);
  const auto s = klsf::spectrum(set);
  o.result["alpha"] = s.alpha;
  o.result["max_nonzero"] = s.max_nonzero();
  std::ostringstream csv;
  klsf::write_spectrum_csv(csv, s, set);
  o.csv = csv.str();
  if (check.applicable && !check.pass) o.code = kCheck;
  o.text = o.result["verdict"].get<std::string>();
  return o;
}

std::string csv_path(const std::string& base, std::size_t index, std::size_t count) {
  if (count <= 1) return base;
  std::filesystem::path p(base);
  return (p.parent_path() / (p.stem().string() + "_" + std::to_string(index) + p.extension().string())).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(k,l)-sum-free sets in Z_p and F_p^n"};
  app.require_subcommand(1);
  unsigned threads = 0;
  std::string json_path, csv_base, grid_path;
  app.add_option("--threads", threads, "worker threads (default KLSF_THREADS or 1)");

  Json item = Json::object();
  auto flag = [&](CLI::App* sub, const std::string& name, const std::string& help) {
    sub->add_option_function<std::string>(
        "--" + name,
        [&item, name](const std::string& v) {
          if (name == "P" || name == "V") {
            item[name] = parse_points(v);
          } else if (name == "type" || name == "set" || name == "level" || name == "mode" || name == "c") {
            item[name] = v;
          } else {
            item[name] = klsf::detail::parse_uint(v, name.c_str());
          }
        },
        help);
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--json", json_path, "write the run manifest to this file");
    sub->add_option("--grid", grid_path, "JSON array of parameter objects, inline or as a file; each overrides the flags");
  };

  auto* construct = app.add_subcommand("construct", "generate a cuboid or a typed set");
  for (auto [n, h] : {std::pair{"type", "cuboid, type1..type5, rz"}, {"k", "k"}, {"l", "l"}, {"p", "prime"},
                      {"n", "dimension"}, {"j", "cuboid index"}, {"a", "type-1 start"}, {"s", "s"},
                      {"P", "points of P, e.g. (1),(2)"}, {"V", "basis of V, e.g. (1,0)"}})
    flag(construct, n, h);
  auto* verify = app.add_subcommand("verify", "check (k,l)-sum-freeness and triviality");
  for (auto n : {"set", "k", "l"}) flag(verify, n, n);
  auto* classify = app.add_subcommand("classify", "structural classification");
  for (auto n : {"set", "k", "l"}) flag(classify, n, n);
  auto* enumerate = app.add_subcommand("enumerate", "exhaustive search over Z_p");
  for (auto n : {"k", "l", "p", "level", "p_limit"}) flag(enumerate, n, n);
  enumerate->add_option("--csv", csv_base, "orbit table CSV");
  auto* covering = app.add_subcommand("covering", "covering verdict or τ scan");
  for (auto n : {"p", "c", "mode", "trials", "seed", "set", "p_limit"}) flag(covering, n, n);
  covering->add_option("--csv", csv_base, "τ table CSV");
  auto* spectral = app.add_subcommand("spectral", "Fourier coefficients and the spectral bound");
  for (auto n : {"set", "k", "l"}) flag(spectral, n, n);
  spectral->add_option("--csv", csv_base, "full spectrum CSV");
  auto* reproduce = app.add_subcommand("reproduce", "run an acceptance criterion");
  std::string criterion;
  reproduce->add_option("id", criterion, "A1..A11 or all")->required();
  for (auto* sub : {construct, verify, classify, enumerate, covering, spectral, reproduce}) common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kParameter;
  }
  threads = klsf::resolve_threads(threads);

  klsf::RunManifest manifest;
  manifest.command.push_back("klsf");
  for (int i = 1; i < argc; ++i) manifest.command.push_back(argv[i]);
  const auto t0 = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    if (reproduce->parsed()) {
      klsf::AcceptanceContext ctx(threads);
      std::vector<std::string> ids;
      if (criterion == "all")
        for (const auto& [id, fn] : klsf::acceptance::criteria()) ids.push_back(id);
      else
        ids.push_back(criterion);
      for (const auto& id : ids) {
        const auto r = klsf::acceptance::run(id, ctx);
        std::cout << klsf::acceptance::format_line(r) << std::endl;
        manifest.grid.push_back(id);
        manifest.results.push_back(
            Json{{"id", r.id}, {"pass", r.pass}, {"finding", r.finding}, {"detail", r.detail}, {"data", r.data}});
        manifest.timing[r.id] = r.seconds;
        code = combine(code, r.pass ? kOk : (r.finding ? kFinding : kCheck));
      }
      if (std::find(ids.begin(), ids.end(), "A10") != ids.end()) manifest.seeds.push_back(klsf::acceptance::kSampledSeed);
    } else {
      std::vector<Json> items;
      if (!grid_path.empty()) {
        // Inline JSON or a file path.
        std::string text = grid_path;
        if (text.find_first_not_of(" \t") == std::string::npos || text[text.find_first_not_of(" \t")] != '[') {
          std::ifstream in(grid_path);
          if (!in) throw klsf::ParameterError("cannot read grid file " + grid_path);
          text.assign(std::istreambuf_iterator<char>(in), {});
        }
        Json grid;
        try {
          grid = Json::parse(text);
        } catch (const nlohmann::json::exception& e) {
          throw klsf::ParameterError(std::string("grid is not valid JSON: ") + e.what());
        }
        if (!grid.is_array()) throw klsf::ParameterError("grid must be a JSON array");
        for (const auto& g : grid) {
          Json merged = item;
          for (auto it = g.begin(); it != g.end(); ++it) merged[it.key()] = it.value();
          items.push_back(merged);
        }
      } else {
        items.push_back(item);
      }
      for (std::size_t i = 0; i < items.size(); ++i) {
        const Json& it = items[i];
        Outcome o;
        if (construct->parsed()) o = do_construct(it);
        else if (verify->parsed()) o = do_verify(it);
        else if (classify->parsed()) o = do_classify(it);
        else if (enumerate->parsed()) o = do_enumerate(it, threads);
        else if (covering->parsed()) o = do_covering(it);
        else o = do_spectral(it);
        if (it.contains("seed")) manifest.seeds.push_back(it["seed"]);
        else if (covering->parsed() && o.result.contains("seed")) manifest.seeds.push_back(o.result["seed"]);
        manifest.grid.push_back(it);
        manifest.results.push_back(o.result);
        if (!csv_base.empty() && !o.csv.empty()) std::ofstream(csv_path(csv_base, i, items.size())) << o.csv;
        if (construct->parsed() && !o.text.empty()) std::cout << o.text << "\n";
        code = combine(code, o.code);
      }
      if (!construct->parsed()) std::cout << manifest.reproducible_part().dump(2) << "\n";
    }
  } catch (const klsf::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kParameter;
  } catch (const klsf::UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kParameter;
  } catch (const klsf::HypothesisError& e) {
    std::cerr << "hypothesis not met: " << e.what() << "\n";
    return kParameter;
  } catch (const klsf::CheckFailure& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheck;
  }
  manifest.timing["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  manifest.timing["threads"] = threads;
  if (!json_path.empty()) std::ofstream(json_path) << manifest.to_json().dump(2) << "\n";
  return code;
}
