// posetflow: build finite posets, certify the LYM/normalized-matching
// property with exact flows, construct unit flows, and verify the product
// and Hamming-ball capacity inequalities symbolically.
//
// Exit codes: 0 all requested checks pass, 1 a mathematical violation was
// found, 2 usage or validation error, 3 a resource cap was exceeded.

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "posetflow/builders.hpp"
#include "posetflow/errors.hpp"
#include "posetflow/flow.hpp"
#include "posetflow/json_io.hpp"
#include "posetflow/oracle.hpp"
#include "posetflow/theorems.hpp"

using namespace posetflow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

SizeCaps caps_from_env() {
  SizeCaps caps;
  if (const char* cap = std::getenv("POSETFLOW_MAX_ELEMENTS")) {
    caps.max_elements = std::atoll(cap);
  }
  return caps;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write to " + out_path);
  out << text;
}

Poset load_poset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  Json j = Json::parse(in, nullptr, true);
  return poset_from_json(j);
}

LayerProfile parse_profile(const std::string& text) {
  LayerProfile profile;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    auto v = parse_decimal(item);
    if (!v || *v < 0) throw std::invalid_argument("bad profile entry: " + item);
    profile.sizes.push_back(*v);
  }
  if (profile.sizes.empty() || !profile.is_valid()) {
    throw std::invalid_argument("profile must be a comma-separated list with contiguous support");
  }
  return profile;
}

struct Range {
  int lo = 0;
  int hi = 0;
};

Range parse_range(const std::string& text) {
  Range r;
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    r.lo = r.hi = std::stoi(text);
  } else {
    r.lo = std::stoi(text.substr(0, dots));
    r.hi = std::stoi(text.substr(dots + 2));
  }
  if (r.lo > r.hi) throw std::invalid_argument("bad range: " + text);
  return r;
}

std::string fraction_with_approx(const Rational& v) {
  return to_fraction(v) + " (~" + decimal_approx(v) + ")";
}

// ---------------------------------------------------------------- build ---

int cmd_build(const std::string& kind, int n, int p, int q, int rho,
              const std::string& left_path, const std::string& right_path,
              const std::string& p_profile, const std::string& q_profile,
              const std::string& out_path) {
  SizeCaps caps = caps_from_env();
  Poset poset;
  if (kind == "boolean-lattice") {
    poset = boolean_lattice(n, caps);
  } else if (kind == "chain") {
    poset = chain_poset(n);
  } else if (kind == "antichain") {
    poset = antichain_poset(n);
  } else if (kind == "product") {
    if (left_path.empty() || right_path.empty()) {
      throw std::invalid_argument("product requires --left and --right");
    }
    poset = product(load_poset(left_path), load_poset(right_path), caps);
  } else if (kind == "hamming-ball") {
    poset = hamming_ball({p, q, rho}, caps);
  } else if (kind == "hamming-block-poset") {
    poset = block_poset(block_grid({p, q, rho}));
  } else if (kind == "convex-closure") {
    poset = convex_closure_grid({p, q, rho}, caps);
  } else if (kind == "product-block-poset") {
    if (p_profile.empty() || q_profile.empty()) {
      throw std::invalid_argument("product-block-poset requires --p-profile and --q-profile");
    }
    poset = product_block_poset(parse_profile(p_profile), parse_profile(q_profile));
  } else {
    throw std::invalid_argument("unknown build kind: " + kind);
  }
  write_output(canonical_dump(poset_to_json(poset)), out_path);
  return kExitOk;
}

// -------------------------------------------------------------- analyze ---

int cmd_analyze(const std::string& in_path, const std::vector<std::string>& checks,
                bool use_oracle, bool assert_sperner, bool as_json, bool serial,
                const std::string& out_path) {
  Poset poset = load_poset(in_path);
  auto valid = validate(poset);
  if (!valid.ok) {
    std::ostringstream msg;
    msg << "invalid poset:";
    for (const auto& p : valid.problems) msg << "\n  " << p;
    throw std::invalid_argument(msg.str());
  }
  Parallelism mode = serial ? Parallelism::serial : Parallelism::parallel;

  bool violation = false;
  Json report;
  std::ostringstream text;
  report["input"] = in_path;

  auto ranks = rank_function(poset);
  for (const auto& check : checks) {
    if (check == "rank") {
      Json ranks_json = Json::object();
      for (int i : poset.sorted_order()) ranks_json[poset.id(i)] = ranks.rank[i];
      report["rank"] = {{"height", ranks.height()}, {"graded", is_graded(poset, ranks)},
                        {"ranks", ranks_json}};
      text << "rank: height " << ranks.height() << ", "
           << (is_graded(poset, ranks) ? "graded" : "not graded") << "\n";
    } else if (check == "profile") {
      Json profile = Json::array();
      for (const auto& s : ranks.profile.sizes) profile.push_back(s.get_str());
      report["profile"] = profile;
      text << "profile:";
      for (const auto& s : ranks.profile.sizes) text << " " << s.get_str();
      text << "\n";
    } else if (check == "width") {
      BigInt w = width(poset);
      BigInt ell = largest_layer(ranks);
      bool sperner = (w == ell);
      Json entry = {{"width", w.get_str()}, {"largest_layer", ell.get_str()},
                    {"sperner", sperner}};
      text << "width: " << w.get_str() << ", largest layer " << ell.get_str()
           << (sperner ? " (width = largest layer)" : " (width exceeds largest layer)") << "\n";
      if (use_oracle) {
        BigInt brute = brute_width(poset);
        entry["oracle_width"] = brute.get_str();
        text << "oracle width: " << brute.get_str() << "\n";
        if (brute != w) violation = true;
      }
      if (assert_sperner && !sperner) violation = true;
      report["width"] = entry;
    } else if (check == "lym-certify") {
      auto cert = lym_certify(poset, mode);
      report["lym_certify"] = lym_certificate_to_json(poset, cert);
      if (cert.lym) {
        text << "lym-certify: certified (normalized matching at every layer pair)\n";
      } else {
        violation = true;
        text << "lym-certify: FAILED at layer " << cert.failure->layer << "\n";
        text << "  witness S = {";
        for (size_t i = 0; i < cert.failure->witness.size(); ++i) {
          text << (i ? "," : "") << poset.id(cert.failure->witness[i]);
        }
        text << "}\n  antichain {";
        for (size_t i = 0; i < cert.failure->antichain.size(); ++i) {
          text << (i ? "," : "") << poset.id(cert.failure->antichain[i]);
        }
        text << "} has LYM sum " << fraction_with_approx(cert.failure->lym_sum) << "\n";
      }
    } else if (check == "max-lym-sum") {
      auto cert = max_weight_antichain(poset, lym_weights(poset));
      report["max_lym_sum"] = antichain_certificate_to_json(poset, cert);
      text << "max-lym-sum: " << fraction_with_approx(cert.value) << "\n";
      if (cert.value != 1) {
        violation = true;
        text << "  attained by {";
        for (size_t i = 0; i < cert.antichain.size(); ++i) {
          text << (i ? "," : "") << poset.id(cert.antichain[i]);
        }
        text << "}\n";
      }
      if (use_oracle) {
        auto brute = brute_max_lym_sum(poset);
        report["oracle_max_lym_sum"] = to_fraction(brute);
        text << "oracle max-lym-sum: " << fraction_with_approx(brute) << "\n";
        if (brute != cert.value) violation = true;
      }
    } else if (check == "unit-flow") {
      try {
        auto flow = build_unit_flow(poset);
        auto verified = verify_unit_flow(poset, flow);
        report["unit_flow"] = unit_flow_to_json(flow);
        report["unit_flow_verified"] = verified.ok;
        if (!verified.ok) violation = true;
        text << "unit-flow: " << flow.chains.size() << " chains, "
             << (verified.ok ? "verified" : "VERIFICATION FAILED") << "\n";
        if (flow.chains.size() <= 50) {
          for (const auto& chain : flow.chains) {
            text << "  w=" << to_fraction(chain.weight) << ":";
            for (const auto& id : chain.elements) text << " " << id;
            text << "\n";
          }
        }
      } catch (const UnitFlowInfeasible& e) {
        violation = true;
        report["unit_flow"] = nullptr;
        report["unit_flow_error"] = e.what();
        text << "unit-flow: infeasible (" << e.what() << ")\n";
      }
    } else {
      throw std::invalid_argument("unknown check: " + check);
    }
  }

  write_output(as_json ? canonical_dump(report) : text.str(), out_path);
  return violation ? kExitViolation : kExitOk;
}

// --------------------------------------------------------------- harper ---

int cmd_harper(const std::string& p_text, const std::string& q_text, int random_count,
               uint64_t seed, bool as_json, bool serial, const std::string& out_path) {
  Parallelism mode = serial ? Parallelism::serial : Parallelism::parallel;
  Json report;
  std::ostringstream text;
  bool violation = false;

  if (random_count > 0) {
    auto summary = harper_random_sweep(random_count, seed, mode);
    violation = summary.capacity_violations > 0 || summary.logconcavity_violations > 0;
    report = {{"pairs", summary.pairs},
              {"capacity_violations", summary.capacity_violations},
              {"logconcavity_violations", summary.logconcavity_violations}};
    text << "harper: " << summary.pairs << " random log-concave pairs (seed " << seed << ")\n"
         << "  capacity violations: " << summary.capacity_violations << "\n"
         << "  convolution log-concavity failures: " << summary.logconcavity_violations << "\n";
  } else {
    if (p_text.empty() || q_text.empty()) {
      throw std::invalid_argument("harper requires --p and --q profiles, or --random N");
    }
    auto p = parse_profile(p_text);
    auto q = parse_profile(q_text);
    if (!is_log_concave(p) || !is_log_concave(q)) {
      throw LogConcavityError("harper: input profiles must be log-concave");
    }
    auto capacity = harper_block_inequality(p, q, mode);
    auto logconcavity = product_log_concavity_check(p, q);
    report["capacity"] = inequality_report_to_json(capacity);
    report["log_concavity"] = inequality_report_to_json(logconcavity);
    text << "capacity inequality: " << (capacity.holds ? "holds" : "VIOLATED") << " ("
         << capacity.checked << " instances)\n";
    text << "convolution log-concavity: " << (logconcavity.holds ? "holds" : "VIOLATED")
         << " (" << logconcavity.checked << " interior indices)\n";
    auto conv = convolution(p, q);
    Json probes = Json::array();
    for (int k = 0; k < static_cast<int>(conv.sizes.size()); ++k) {
      auto probe = log_concavity_rearrangement_probe(p, q, k);
      probes.push_back({{"k", k},
                        {"difference", probe.difference.get_str()},
                        {"quadratic_form_sum", probe.quadratic_form_sum.get_str()}});
      if (probe.quadratic_form_sum < 0) violation = true;
    }
    report["rearrangement_probe"] = probes;
    text << "rearrangement probe: quadratic form non-negative at every index\n";
    violation = violation || !capacity.holds || !logconcavity.holds;
  }

  write_output(as_json ? canonical_dump(report) : text.str(), out_path);
  return violation ? kExitViolation : kExitOk;
}

// -------------------------------------------------------------- hamming ---

struct HammingRow {
  int p, q, rho;
  std::string text;
  Json json;
  bool violation = false;
};

HammingRow hamming_row(int p, int q, int rho, bool use_oracle, long long element_cap) {
  HammingRow row{p, q, rho, "", Json::object(), false};
  HammingBallParams params{p, q, rho};
  auto grid = block_grid(params);
  auto blocks = block_poset(grid);

  auto capacity = hamming_capacity_inequality(params, Parallelism::serial);
  auto block_cert = lym_certify(blocks, Parallelism::serial);
  BigInt block_width = width(blocks);
  BigInt ell = largest_layer(rank_function(blocks));
  bool sperner_block = (block_width == ell);

  BigInt elements = 0;
  for (const auto& e : grid.blocks) elements += e.size;

  row.json = {{"p", p},  {"q", q},           {"rho", rho},
              {"elements", elements.get_str()}, {"capacity", capacity.holds},
              {"block_lym", block_cert.lym},    {"width", block_width.get_str()},
              {"largest_layer", ell.get_str()}, {"sperner", sperner_block}};
  row.violation = !capacity.holds || !block_cert.lym || !sperner_block;

  std::ostringstream line;
  line << "p=" << p << " q=" << q << " rho=" << rho << " |B|=" << elements.get_str()
       << " capacity=" << (capacity.holds ? "ok" : "VIOLATED")
       << " block-lym=" << (block_cert.lym ? "ok" : "FAILED");

  bool element_level = elements <= BigInt(static_cast<long>(element_cap));
  if (element_level) {
    SizeCaps caps;
    caps.max_elements = element_cap;
    auto ball = hamming_ball(params, caps);
    auto element_cert = lym_certify(ball, Parallelism::serial);
    BigInt w = width(ball);
    bool sperner = (w == ell);
    row.json["element_lym"] = element_cert.lym;
    row.json["element_width"] = w.get_str();
    row.violation = row.violation || !element_cert.lym || !sperner || w != block_width;
    line << " element-lym=" << (element_cert.lym ? "ok" : "FAILED") << " width="
         << w.get_str() << "/" << ell.get_str();
    if (use_oracle) {
      if (ball.size() <= 24) {
        BigInt brute = brute_width(ball);
        row.json["oracle_width"] = brute.get_str();
        row.violation = row.violation || brute != w;
        line << " oracle=" << brute.get_str();
      } else {
        row.json["oracle_width"] = nullptr;
        line << " oracle=skipped";
      }
    }
  } else {
    row.json["element_lym"] = nullptr;
    line << " element-level=skipped(cap)";
  }
  line << (row.violation ? " [VIOLATION]" : "");
  row.text = line.str();
  return row;
}

int cmd_hamming(const std::string& p_range, const std::string& q_range,
                const std::string& rho_range, bool use_oracle, long long element_cap,
                bool as_json, bool serial, const std::string& out_path) {
  Range pr = parse_range(p_range), qr = parse_range(q_range), rr = parse_range(rho_range);
  std::vector<std::tuple<int, int, int>> triples;
  for (int p = pr.lo; p <= pr.hi; ++p) {
    for (int q = qr.lo; q <= qr.hi; ++q) {
      for (int rho = rr.lo; rho <= rr.hi; ++rho) triples.emplace_back(p, q, rho);
    }
  }
  std::vector<HammingRow> rows(triples.size());
  int count = static_cast<int>(triples.size());
#pragma omp parallel for schedule(dynamic) if (!serial)
  for (int i = 0; i < count; ++i) {
    auto [p, q, rho] = triples[i];
    rows[i] = hamming_row(p, q, rho, use_oracle, element_cap);
  }

  bool violation = false;
  Json all = Json::array();
  std::ostringstream text;
  for (const auto& row : rows) {
    violation = violation || row.violation;
    all.push_back(row.json);
    text << row.text << "\n";
  }
  text << (violation ? "sweep: violations found\n" : "sweep: all rows pass\n");
  Json report = {{"rows", all}, {"violations", violation}};
  write_output(as_json ? canonical_dump(report) : text.str(), out_path);
  return violation ? kExitViolation : kExitOk;
}

// ------------------------------------------------------------- footnote ---

int cmd_footnote(int t_max, bool as_json, const std::string& out_path) {
  if (t_max < 2) throw std::invalid_argument("footnote requires --t-max >= 2");
  bool violation = false;
  Json rows = Json::array();
  std::ostringstream text;
  for (int t = 2; t <= t_max; ++t) {
    auto report = footnote_collision_witness(t);
    bool matches = static_cast<int>(report.duplicates.size()) == t - 1;
    violation = violation || !matches;
    Json row = {{"t", t},
                {"duplicates", static_cast<long long>(report.duplicates.size())},
                {"expected", t - 1},
                {"census_pairs", report.image_collision_pairs_total}};
    if (t == 2 && !report.duplicates.empty()) {
      const auto& c = report.duplicates.front();
      row["witness"] = {{"source_a", {c.source_a.first, c.source_a.second}},
                        {"source_b", {c.source_b.first, c.source_b.second}},
                        {"image", {c.image.first, c.image.second}}};
    }
    rows.push_back(row);
    text << "t=" << t << ": duplicates " << report.duplicates.size() << " (expected " << t - 1
         << (matches ? ", ok" : ", MISMATCH") << "); full case-map census "
         << report.image_collision_pairs_total << " colliding pairs\n";
    if (t == 2 && !report.duplicates.empty()) {
      const auto& c = report.duplicates.front();
      text << "  witness: (" << c.source_a.first << "," << c.source_a.second << ") and ("
           << c.source_b.first << "," << c.source_b.second << ") both map to ("
           << c.image.first << "," << c.image.second << ")\n";
    }
  }
  Json report = {{"rows", rows}, {"violations", violation}};
  write_output(as_json ? canonical_dump(report) : text.str(), out_path);
  return violation ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Sperner/LYM certification for finite posets"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "Construct a poset and write its JSON");
  std::string kind, left_path, right_path, p_profile, q_profile, out_path = "-";
  int n = 0, p = 0, q = 0, rho = 0;
  build->add_option("kind", kind,
                    "boolean-lattice|chain|antichain|product|hamming-ball|"
                    "hamming-block-poset|convex-closure|product-block-poset")
      ->required();
  build->add_option("--n", n, "size parameter for boolean-lattice/chain/antichain");
  build->add_option("--p", p, "Hamming ball base-set size");
  build->add_option("--q", q, "Hamming ball complement size");
  build->add_option("--rho", rho, "Hamming ball radius");
  build->add_option("--left", left_path, "left factor JSON (product)");
  build->add_option("--right", right_path, "right factor JSON (product)");
  build->add_option("--p-profile", p_profile, "first layer profile, comma-separated");
  build->add_option("--q-profile", q_profile, "second layer profile, comma-separated");
  build->add_option("-o,--out", out_path, "output path (default stdout)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Run checks against a poset JSON file");
  std::string in_path;
  std::vector<std::string> checks;
  bool use_oracle = false, as_json = false, assert_sperner = false, serial = false;
  analyze->add_option("input", in_path, "poset JSON file")->required();
  analyze->add_option("--check", checks,
                      "rank|profile|width|lym-certify|max-lym-sum|unit-flow (repeatable)")
      ->required();
  analyze->add_flag("--oracle", use_oracle, "cross-check against brute-force enumeration");
  analyze->add_flag("--assert-sperner", assert_sperner, "fail unless width = largest layer");
  analyze->add_flag("--json", as_json, "machine-readable output");
  analyze->add_flag("--serial", serial, "use the serial reference kernels");
  analyze->add_option("-o,--out", out_path, "output path (default stdout)");

  // harper
  auto* harper = app.add_subcommand("harper", "Verify the product-poset inequalities");
  std::string hp, hq;
  int random_count = 0;
  uint64_t seed = 0;
  harper->add_option("--p", hp, "first profile, e.g. 1,2,1");
  harper->add_option("--q", hq, "second profile, e.g. 1,1");
  harper->add_option("--random", random_count, "check N seeded random log-concave pairs");
  harper->add_option("--seed", seed, "seed for --random (default 0)");
  harper->add_flag("--json", as_json, "machine-readable output");
  harper->add_flag("--serial", serial, "use the serial reference kernels");
  harper->add_option("-o,--out", out_path, "output path (default stdout)");

  // hamming
  auto* hamming = app.add_subcommand("hamming", "Sweep Hamming balls and certify them");
  std::string p_range = "1..5", q_range = "1..5", rho_range = "1..6";
  long long element_cap = 4096;
  hamming->add_option("--p", p_range, "range, e.g. 1..5 or 3");
  hamming->add_option("--q", q_range, "range");
  hamming->add_option("--rho", rho_range, "range");
  hamming->add_flag("--oracle", use_oracle, "brute-force width cross-check (<= 24 elements)");
  hamming->add_option("--element-cap", element_cap,
                      "skip element-level checks above this size (block-level always runs)");
  hamming->add_flag("--json", as_json, "machine-readable output");
  hamming->add_flag("--serial", serial, "compute rows serially");
  hamming->add_option("-o,--out", out_path, "output path (default stdout)");

  // footnote
  auto* footnote = app.add_subcommand("footnote", "Reproduce the case-map duplicate counts");
  int t_max = 0;
  footnote->add_option("--t-max", t_max, "largest t to check (>= 2)")->required();
  footnote->add_flag("--json", as_json, "machine-readable output");
  footnote->add_option("-o,--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
    if (build->parsed()) {
      return cmd_build(kind, n, p, q, rho, left_path, right_path, p_profile, q_profile,
                       out_path);
    }
    if (analyze->parsed()) {
      return cmd_analyze(in_path, checks, use_oracle, assert_sperner, as_json, serial, out_path);
    }
    if (harper->parsed()) {
      return cmd_harper(hp, hq, random_count, seed, as_json, serial, out_path);
    }
    if (hamming->parsed()) {
      return cmd_hamming(p_range, q_range, rho_range, use_oracle, element_cap, as_json, serial,
                         out_path);
    }
    if (footnote->parsed()) {
      return cmd_footnote(t_max, as_json, out_path);
    }
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
