// Command-line front end: construct, verify, bounds, approx, region.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qlc/qlc.hpp"

namespace {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

struct BlockOptions {
  std::string type = "custom";
  int k0 = 0;
  std::string matrix_file;
  int ell0 = 0;
  std::string code_file;
  std::string code_kind = "repetition";
  int radius = 1;
};

void add_block_options(CLI::App* cmd, BlockOptions& opt) {
  cmd->add_option("--type", opt.type, "trivial|nonsystematic|covering|custom")
      ->check(CLI::IsMember({"trivial", "nonsystematic", "covering", "custom"}));
  cmd->add_option("--k0", opt.k0, "Block length k0 (trivial, nonsystematic, covering)");
  cmd->add_option("--matrix", opt.matrix_file,
                  "Block matrix text file for --type custom (default: the 5x6 matrix)");
  cmd->add_option("--ell0", opt.ell0,
                  "Access budget per block for --type custom (default: smallest feasible)");
  cmd->add_option("--code", opt.code_file, "Covering code file, one +/- string per line");
  cmd->add_option("--code-kind", opt.code_kind,
                  "Built-in code when --code is absent: full|repetition|greedy")
      ->check(CLI::IsMember({"full", "repetition", "greedy"}));
  cmd->add_option("--radius", opt.radius, "Target radius for --code-kind greedy");
}

qlc::CoveringCode load_code(const BlockOptions& opt) {
  if (!opt.code_file.empty()) return qlc::parse_code_text(qlc::read_file(opt.code_file));
  if (opt.k0 < 1) throw qlc::ContractError("--k0 is required for built-in codes");
  if (opt.code_kind == "full") return qlc::CoveringCode::full_cube(opt.k0);
  if (opt.code_kind == "greedy") return qlc::greedy_covering_code(opt.k0, opt.radius);
  return qlc::CoveringCode::repetition(opt.k0);
}

qlc::BlockSpec build_block(const BlockOptions& opt) {
  if (opt.type == "trivial" || opt.type == "nonsystematic") {
    if (opt.k0 < 1) throw qlc::ContractError("--k0 is required for --type " + opt.type);
    return opt.type == "trivial" ? qlc::trivial_block(opt.k0)
                                 : qlc::nonsystematic_block(opt.k0);
  }
  if (opt.type == "covering") return qlc::covering_code_block(load_code(opt));
  const qlc::Matrix M = opt.matrix_file.empty()
                            ? qlc::five_by_six_matrix()
                            : qlc::parse_matrix_text(qlc::read_file(opt.matrix_file));
  const int ell0 = opt.ell0 > 0 ? opt.ell0 : qlc::min_access_for_M(M);
  return qlc::custom_block(M, ell0);
}

qlc::json rate_json(const qlc::Protocol& p) {
  const auto rate = p.rate_point();
  return {{"k", p.k()}, {"n", p.n()}, {"ell", p.ell()}, {"nu", rate.nu}, {"lambda", rate.lambda}};
}

void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-")
    std::cout << contents;
  else
    qlc::write_file(path, contents);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Access-redundancy protocols for {+1,-1} linear computation"};
  app.require_subcommand(1);
  unsigned threads = qlc::default_thread_count();
  app.add_option("--threads", threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);

  // construct
  auto* construct = app.add_subcommand("construct", "Build a block protocol");
  BlockOptions construct_opt;
  int construct_m = 1;
  std::string construct_out;
  add_block_options(construct, construct_opt);
  construct->add_option("--m", construct_m, "Number of blocks")->check(CLI::PositiveNumber);
  construct->add_option("-o,--output", construct_out, "Protocol JSON output")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Exhaustively verify a protocol file");
  std::string verify_file;
  double tol = qlc::kDefaultTolerance;
  verify->add_option("protocol", verify_file, "Protocol JSON")->required();
  verify->add_option("--tol", tol, "Residual tolerance")->check(CLI::PositiveNumber);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Evaluate a lower-bound curve");
  std::string curve, grid_spec = "1:3:0.01", bounds_out;
  int bounds_k0 = 4, bounds_k = 60, n0_max = 0;
  bounds->add_option("--curve", curve, "thm1|thm2|cor1|block")
      ->required()
      ->check(CLI::IsMember({"thm1", "thm2", "cor1", "block"}));
  bounds->add_option("--k0", bounds_k0, "Block length for --curve block");
  bounds->add_option("--n0-max", n0_max, "Largest n0 scanned for --curve block (default 2^k0)");
  bounds->add_option("--k", bounds_k, "Message length for the finite --curve thm2");
  bounds->add_option("--grid", grid_spec, "NU_MIN:NU_MAX:STEP");
  bounds->add_option("-o,--output", bounds_out, "CSV output (default stdout)");

  // approx
  auto* approx = app.add_subcommand("approx", "Build an epsilon-approximation protocol");
  std::string method;
  BlockOptions approx_opt;
  int b = 1, approx_m = 1, ksvd_k = 4, ksvd_n = 8, ksvd_ell = 1, iters = 30;
  double eps = 0.1;
  std::uint64_t seed = 0;
  std::string approx_out, report_out, csv_out;
  approx->add_option("--method", method, "covering|codeonly|discard|ksvd")
      ->required()
      ->check(CLI::IsMember({"covering", "codeonly", "discard", "ksvd"}));
  add_block_options(approx, approx_opt);
  approx->add_option("--b", b, "Uncorrected coordinates per block (covering)");
  approx->add_option("--eps", eps, "Discarded fraction of blocks (discard)");
  approx->add_option("--m", approx_m, "Number of blocks")->check(CLI::PositiveNumber);
  approx->add_option("--k", ksvd_k, "Length k (ksvd)");
  approx->add_option("--n", ksvd_n, "Dictionary size n (ksvd)");
  approx->add_option("--ell", ksvd_ell, "Sparsity ell (ksvd)");
  approx->add_option("--iters", iters, "K-SVD iterations");
  approx->add_option("--seed", seed, "Random seed (ksvd)");
  approx->add_option("-o,--output", approx_out, "Protocol JSON output");
  approx->add_option("--report", report_out, "Report JSON output (default stdout)");
  approx->add_option("--csv", csv_out, "Scatter CSV row: method,epsilon,nu,lambda");

  // region
  auto* region = app.add_subcommand("region", "Export region plot data");
  bool all = false, with_approx = false;
  std::string region_out, region_grid = "1:3:0.01";
  region->add_flag("--all", all, "Bound curves, block curves k0 = 4,5,6 and construction points");
  region->add_flag("--approx", with_approx, "Also add the approximate schemes' points");
  region->add_option("--grid", region_grid, "NU_MIN:NU_MAX:STEP");
  region->add_option("-o,--output", region_out, "CSV output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*construct) {
      const auto spec = build_block(construct_opt);
      const auto p = qlc::expand_blocks(spec, construct_m);
      qlc::write_file(construct_out, qlc::protocol_to_string(p));
      std::cout << rate_json(p).dump(1) << '\n';
      return kOk;
    }
    if (*verify) {
      const auto p = qlc::protocol_from_string(qlc::read_file(verify_file));
      const auto report = qlc::verify_protocol(p, tol, threads);
      std::cout << qlc::report_to_json(report).dump(1) << '\n';
      return report.ok ? kOk : kVerificationFailed;
    }
    if (*bounds) {
      const auto grid = qlc::parse_grid(grid_spec);
      qlc::BoundCurve c;
      if (curve == "thm1") c = qlc::thm1_curve(grid);
      else if (curve == "thm2") c = qlc::thm2_curve(bounds_k, grid);
      else if (curve == "cor1") c = qlc::cor1_curve(grid);
      else c = qlc::block_bound_curve(bounds_k0, n0_max > 0 ? n0_max : (1 << bounds_k0));
      emit(bounds_out, qlc::region_export({c}, {}));
      return kOk;
    }
    if (*approx) {
      std::optional<qlc::ApproxProtocol> result;
      if (method == "covering") {
        result = qlc::approx_covering(load_code(approx_opt), b, approx_m);
      } else if (method == "codeonly") {
        result = qlc::approx_covering_codeonly(load_code(approx_opt), approx_m);
      } else if (method == "discard") {
        result = qlc::discard_blocks(build_block(approx_opt), eps, approx_m);
      } else {
        qlc::KsvdOptions opt;
        opt.k = ksvd_k;
        opt.n = ksvd_n;
        opt.ell = ksvd_ell;
        opt.iterations = iters;
        opt.seed = seed;
        opt.threads = threads;
        result = qlc::ksvd(opt).to_approx_protocol(ksvd_ell);
      }
      const auto rate = result->protocol.rate_point();
      qlc::json report{{"epsilon_bound", result->epsilon_bound},
                       {"epsilon_measured", result->epsilon_measured
                                                ? qlc::json(*result->epsilon_measured)
                                                : qlc::json(nullptr)},
                       {"nu", rate.nu},
                       {"lambda", rate.lambda}};
      if (!approx_out.empty())
        qlc::write_file(approx_out, qlc::protocol_to_string(result->protocol));
      emit(report_out, report.dump(1) + "\n");
      if (!csv_out.empty()) {
        const double e = result->epsilon_measured.value_or(result->epsilon_bound);
        qlc::write_file(csv_out, "method,epsilon,nu,lambda\n" + method + ',' +
                                     qlc::format_number(e) + ',' +
                                     qlc::format_number(rate.nu) + ',' +
                                     qlc::format_number(rate.lambda) + '\n');
      }
      return kOk;
    }
    if (*region) {
      if (!all && !with_approx)
        throw qlc::ContractError("region: pass --all and/or --approx");
      qlc::RegionOptions opt;
      opt.grid = qlc::parse_grid(region_grid);
      opt.include_approx = with_approx;
      emit(region_out, qlc::region_csv(opt));
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
