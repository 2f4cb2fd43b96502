#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "warpbank/audio_io.hpp"
#include "warpbank/bank.hpp"
#include "warpbank/coeff_io.hpp"
#include "warpbank/diagnostics.hpp"
#include "warpbank/errors.hpp"
#include "warpbank/spec_file.hpp"
#include "warpbank/spectrogram.hpp"
#include "warpbank/transform.hpp"

namespace warpbank::cli {

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::CoverageError:
      return kCoverage;
    case ErrorCode::LengthMismatch:
      return kLength;
    case ErrorCode::FingerprintMismatch:
      return kFingerprint;
    case ErrorCode::NotPainless:
      return kNotPainless;
    case ErrorCode::NoConvergence:
      return kFailure;
    default:
      return kInvalid;
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidParameter, "cannot parse " + what + " from '" + text + "'");
  }
}

int parse_int(const std::string& text, const std::string& what) {
  const double v = parse_number(text, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw Error(ErrorCode::InvalidParameter, what + " must be an integer, got '" + text + "'");
  }
  return static_cast<int>(v);
}

struct WarpParams {
  double c = 1.0;
  double d = 1.0;
  double l = 1.0;
};

WarpParams parse_warp_params(WarpFamily family, const std::string& text) {
  WarpParams p;
  if (family == WarpFamily::ErbLike) {
    p.c = 9.265;
    p.d = 228.8;
  }
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidParameter, "warp parameter '" + item + "' is not key=value");
    }
    const std::string key = item.substr(0, eq);
    const double value = parse_number(item.substr(eq + 1), "warp parameter " + key);
    if (key == "c") {
      p.c = value;
    } else if (key == "d") {
      p.d = value;
    } else if (key == "l") {
      p.l = value;
    } else {
      throw Error(ErrorCode::InvalidParameter, "unknown warp parameter '" + key + "'");
    }
  }
  return p;
}

std::vector<std::pair<int, int>> parse_factor_list(const std::string& text) {
  std::vector<std::pair<int, int>> factors;
  for (const auto& item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::InvalidParameter, "factor entry '" + item + "' is not m:a");
    }
    factors.emplace_back(parse_int(item.substr(0, colon), "channel index"),
                         parse_int(item.substr(colon + 1), "downsampling factor"));
  }
  return factors;
}

void print_channel_table(std::ostream& out, const WarpedBank& bank) {
  const auto& warp = bank.warping();
  const auto& win = bank.prototype();
  const double fs = bank.grid().sample_rate;
  out << "# kind " << bank_kind_name(bank.kind()) << ", " << bank.channels().size()
      << " channels, painless " << (bank.painless() ? "yes" : "no") << '\n';
  out << std::setw(8) << "m" << std::setw(16) << "center_hz" << std::setw(10) << "a_m"
      << std::setw(16) << "a_real*fs" << std::setw(16) << "bandwidth_hz" << '\n';
  for (const auto& ch : bank.channels()) {
    std::string m_text;
    double bandwidth = 0.0;
    if (ch.kind == ChannelKind::ResidualDc) {
      m_text = "dc";
    } else if (ch.kind == ChannelKind::ResidualNyquist) {
      m_text = "nyq";
    } else {
      m_text = std::to_string(ch.m);
      bandwidth = warp.eval_inv(ch.m + win.support_hi()) - warp.eval_inv(ch.m + win.support_lo());
    }
    out << std::setw(8) << m_text << std::setw(16) << std::setprecision(6) << std::fixed
        << ch.center_hz << std::setw(10) << ch.a << std::setw(16) << ch.a_continuous * fs
        << std::setw(16) << bandwidth << '\n';
    out.unsetf(std::ios::floatfield);
  }
}

std::vector<double> pick_channel(const AudioData& audio, int channel) {
  if (audio.channels.empty()) {
    throw Error(ErrorCode::FormatError, "input signal has no channels");
  }
  if (channel < 0 || channel >= static_cast<int>(audio.channels.size())) {
    throw Error(ErrorCode::InvalidParameter,
                "channel " + std::to_string(channel) + " out of range");
  }
  return audio.channels[static_cast<std::size_t>(channel)];
}

struct DesignArgs {
  std::string warp = "erb";
  std::string warp_params;
  std::string window = "hann";
  std::string coeffs;
  double R = 3.0;
  std::string policy = "painless";
  std::string factors;
  bool no_normalize = false;
  int L = 4096;
  double fs = 44100.0;
  std::string out;
  bool allow_gaps = false;
};

int cmd_design(const DesignArgs& args, std::ostream& out) {
  const WarpFamily family = parse_warp_family(args.warp);
  const WarpParams wp = parse_warp_params(family, args.warp_params);
  const WarpingFunction warp = make_warping(family, wp.c, wp.d, wp.l);
  const GridSpec grid{args.L, args.fs, warp.domain()};
  grid.validate();

  PrototypeWindow window = [&] {
    if (!args.coeffs.empty()) {
      std::vector<double> b;
      for (const auto& s : split(args.coeffs, ',')) b.push_back(parse_number(s, "window coefficient"));
      return make_cosine_window(b, args.R);
    }
    if (args.window == "bspline2") return make_bspline_window(2, args.R);
    if (args.window == "bspline3") return make_bspline_window(3, args.R);
    return make_cosine_window(cosine_family_coefficients(parse_cosine_family(args.window)), args.R);
  }();
  if (!args.no_normalize && window.tight_capable()) window = normalize_for_tightness(window);

  FactorPolicy policy;
  const auto colon = args.policy.find(':');
  const std::string policy_name = args.policy.substr(0, colon);
  if (policy_name == "painless") {
    policy = FactorPolicy::painless();
  } else if (policy_name == "natural") {
    const double a_tilde =
        colon == std::string::npos ? 0.0 : parse_number(args.policy.substr(colon + 1), "a_tilde");
    policy = FactorPolicy::natural(a_tilde);
  } else if (policy_name == "explicit") {
    if (args.factors.empty()) {
      throw Error(ErrorCode::InvalidParameter, "explicit policy needs --factors m:a,...");
    }
    policy = FactorPolicy::explicit_list(parse_factor_list(args.factors));
  } else {
    throw Error(ErrorCode::InvalidParameter, "unknown factor policy '" + args.policy + "'");
  }

  WarpedBank bank = build_bank(warp, window, grid, policy, BuildOptions{args.allow_gaps});
  if (window.normalized() && bank.painless() && !args.allow_gaps) {
    bank = with_kind(std::move(bank), BankKind::Tight);
  }
  if (!args.out.empty()) save_bank_spec(args.out, bank);
  print_channel_table(out, bank);
  return kOk;
}

struct AnalyzeArgs {
  std::string bank;
  std::string in;
  std::string out;
  std::string spectrogram;
  bool pad = false;
  int channel = 0;
};

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out) {
  const WarpedBank bank = load_bank_spec(args.bank);
  const double fs = bank.grid().sample_rate;
  const AudioData audio = read_signal(args.in, fs);
  if (std::abs(audio.sample_rate - fs) > 1e-9 * fs) {
    throw Error(ErrorCode::InvalidParameter,
                "signal sample rate " + std::to_string(audio.sample_rate) +
                    " differs from the bank's " + std::to_string(fs));
  }
  std::vector<double> samples = pick_channel(audio, args.channel);
  const auto L = static_cast<std::size_t>(bank.signal_length());
  if (samples.size() != L) {
    if (!args.pad || samples.size() > L) {
      throw Error(ErrorCode::LengthMismatch,
                  "signal has " + std::to_string(samples.size()) + " samples, bank expects " +
                      std::to_string(L) + (args.pad ? "" : " (use --pad to zero-pad)"));
    }
    samples.resize(L, 0.0);
  }
  const CoefficientSet coeffs = analyze(std::span<const double>(samples), bank);
  write_coefficients(args.out, coeffs);
  if (!args.spectrogram.empty()) {
    const SpectrogramImage image = render_spectrogram(coeffs, bank);
    write_pgm(args.spectrogram, image);
    std::filesystem::path csv = args.spectrogram;
    csv.replace_extension(".csv");
    write_row_csv(csv, image);
  }
  out << "wrote " << coeffs.channels.size() << " channels, energy " << std::setprecision(17)
      << coeffs.energy() << '\n';
  return kOk;
}

struct SynthesizeArgs {
  std::string bank;
  std::string coeffs;
  std::string out;
  std::optional<bool> dual;
  std::string reference;
};

int cmd_synthesize(const SynthesizeArgs& args, std::ostream& out, std::ostream& err) {
  const WarpedBank bank = load_bank_spec(args.bank);
  CoefficientSet coeffs;
  try {
    coeffs = read_coefficients(args.coeffs);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::FormatError) throw Error(ErrorCode::FingerprintMismatch, e.what());
    throw;
  }
  const bool use_dual = args.dual.value_or(bank.kind() == BankKind::Analysis);
  const WarpedBank synth = use_dual && bank.kind() != BankKind::Tight ? painless_dual(bank) : bank;
  const RealSynthesis result = synthesize_real(coeffs, synth);
  write_signal(args.out, result.samples, bank.grid().sample_rate);
  out << "wrote " << result.samples.size() << " samples\n";
  if (!args.reference.empty()) {
    const AudioData ref_audio = read_signal(args.reference, bank.grid().sample_rate);
    const std::vector<double> ref = pick_channel(ref_audio, 0);
    if (ref.size() > result.samples.size()) {
      throw Error(ErrorCode::LengthMismatch, "reference is longer than the reconstruction");
    }
    double diff = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < result.samples.size(); ++i) {
      const double r = i < ref.size() ? ref[i] : 0.0;
      diff += (result.samples[i] - r) * (result.samples[i] - r);
      norm += r * r;
    }
    const double rel = norm > 0.0 ? std::sqrt(diff / norm) : std::sqrt(diff);
    err << "relative reconstruction error " << std::scientific << std::setprecision(3) << rel
        << '\n';
    err.unsetf(std::ios::floatfield);
  }
  return kOk;
}

struct DiagnoseArgs {
  std::string bank;
  std::string sweep;
  std::string report;
};

int cmd_diagnose(const DiagnoseArgs& args, std::ostream& out) {
  const WarpedBank bank = load_bank_spec(args.bank);
  const FrameReport report = frame_report(bank);
  nlohmann::json doc = report_to_json(report);
  doc["bank_kind"] = bank_kind_name(bank.kind());
  doc["channel_count"] = bank.channels().size();
  if (!args.sweep.empty()) {
    std::vector<int> factors;
    for (const auto& s : split(args.sweep, ',')) {
      const int f = parse_int(s, "sweep factor");
      if (f < 1) throw Error(ErrorCode::InvalidParameter, "sweep factors must be >= 1");
      factors.push_back(f);
    }
    const auto rows = scaling_sweep(bank, factors);
    doc["sweep"] = sweep_to_json(rows);
  }
  if (!args.report.empty()) {
    std::ofstream file(args.report);
    if (!file) throw Error(ErrorCode::InvalidParameter, "cannot write " + args.report);
    file << doc.dump(2) << '\n';
  }
  out << std::setprecision(12);
  out << "diagonal     [" << report.diag_inf << ", " << report.diag_sup << "]\n";
  out << "sufficient   [" << report.suff_lower << ", " << report.suff_upper << "]"
      << (report.suff_conclusive ? "" : " (inconclusive)") << '\n';
  out << "empirical    [" << report.emp_lower << ", " << report.emp_upper << "]"
      << (report.emp_converged ? "" : " (not converged)") << '\n';
  out << "tightness    " << report.tightness_ratio << '\n';
  out << "painless     " << (report.painless ? "true" : "false") << '\n';
  for (const auto& w : report.warnings) out << "warning: " << w << '\n';
  if (doc.contains("sweep")) {
    for (const auto& row : doc["sweep"]) {
      out << "sweep x" << row["factor"] << " ratio " << row["tightness_ratio"] << '\n';
    }
  }
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Warped time-frequency filter banks"};
  app.require_subcommand(1);

  DesignArgs design;
  auto* design_cmd = app.add_subcommand("design", "Build a bank and write its spec");
  design_cmd->add_option("--warp", design.warp, "log|sympow|erb|signedpow");
  design_cmd->add_option("--warp-params", design.warp_params, "c=..,d=..,l=..");
  design_cmd->add_option("--window", design.window, "hann|hamming|blackman|bspline2|bspline3");
  design_cmd->add_option("--coeffs", design.coeffs, "cosine-sum coefficients b0,b1,...");
  design_cmd->add_option("--R", design.R, "window width on the warped axis");
  design_cmd->add_option("--policy", design.policy, "painless|natural[:a_tilde]|explicit");
  design_cmd->add_option("--factors", design.factors, "explicit factors m:a,... in samples");
  design_cmd->add_flag("--no-normalize", design.no_normalize, "keep the raw window scale");
  design_cmd->add_option("--L", design.L, "signal length");
  design_cmd->add_option("--fs", design.fs, "sample rate in Hz");
  design_cmd->add_option("--out", design.out, "spec file to write");
  design_cmd->add_flag("--allow-gaps", design.allow_gaps, "accept frequencies no channel covers");

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Compute coefficients of a signal");
  analyze_cmd->add_option("--bank", analyze_args.bank)->required();
  analyze_cmd->add_option("--in", analyze_args.in)->required();
  analyze_cmd->add_option("--out", analyze_args.out)->required();
  analyze_cmd->add_option("--spectrogram", analyze_args.spectrogram, "PGM image to write");
  analyze_cmd->add_flag("--pad", analyze_args.pad, "zero-pad short signals to L");
  analyze_cmd->add_option("--channel", analyze_args.channel, "audio channel to analyze");

  SynthesizeArgs synth_args;
  bool dual_flag = false;
  bool no_dual_flag = false;
  auto* synth_cmd = app.add_subcommand("synthesize", "Reconstruct a signal from coefficients");
  synth_cmd->add_option("--bank", synth_args.bank)->required();
  synth_cmd->add_option("--coeffs", synth_args.coeffs)->required();
  synth_cmd->add_option("--out", synth_args.out)->required();
  auto* dual_opt = synth_cmd->add_flag("--dual", dual_flag, "synthesize with the painless dual");
  synth_cmd->add_flag("--no-dual", no_dual_flag, "synthesize with the bank itself")
      ->excludes(dual_opt);
  synth_cmd->add_option("--reference", synth_args.reference,
                        "signal to compare against; prints the relative error");

  DiagnoseArgs diag_args;
  auto* diag_cmd = app.add_subcommand("diagnose", "Frame bounds and tightness report");
  diag_cmd->add_option("--bank", diag_args.bank)->required();
  diag_cmd->add_option("--sweep-a", diag_args.sweep, "a_m scaling factors, e.g. 1,2,4");
  diag_cmd->add_option("--report", diag_args.report, "JSON report to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*design_cmd) return cmd_design(design, out);
    if (*analyze_cmd) return cmd_analyze(analyze_args, out);
    if (*synth_cmd) {
      if (dual_flag) synth_args.dual = true;
      if (no_dual_flag) synth_args.dual = false;
      return cmd_synthesize(synth_args, out, err);
    }
    if (*diag_cmd) return cmd_diagnose(diag_args, out);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kInvalid;
}

}  // namespace warpbank::cli
