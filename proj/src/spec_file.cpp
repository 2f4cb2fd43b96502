#include "warpbank/spec_file.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "warpbank/errors.hpp"

namespace warpbank {

using nlohmann::json;

namespace {

std::string policy_name(FactorPolicy::Kind kind) {
  switch (kind) {
    case FactorPolicy::Kind::Natural: return "natural";
    case FactorPolicy::Kind::Painless: return "painless";
    case FactorPolicy::Kind::Explicit: return "explicit";
  }
  return "?";
}

std::string channel_kind_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::Warped: return "warped";
    case ChannelKind::ResidualDc: return "residual_dc";
    case ChannelKind::ResidualNyquist: return "residual_nyquist";
  }
  return "?";
}

json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

template <typename T>
T required(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw Error(ErrorCode::FormatError, std::string("bank spec is missing '") + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::FormatError,
                std::string("bank spec field '") + key + "' has the wrong type");
  }
}

}  // namespace

std::string bank_kind_name(BankKind kind) {
  switch (kind) {
    case BankKind::Analysis: return "analysis";
    case BankKind::Dual: return "dual";
    case BankKind::Tight: return "tight";
  }
  return "?";
}

json bank_to_json(const WarpedBank& bank) {
  const WarpingFunction& w = bank.warping();
  const PrototypeWindow& p = bank.prototype();
  const GridSpec& g = bank.grid();

  json doc;
  doc["format"] = "warpbank-spec";
  doc["format_version"] = kSpecFormatVersion;
  doc["warping"] = {{"family", std::string(to_string(w.family()))},
                    {"c", w.c()},
                    {"d", w.d()},
                    {"l", w.l()},
                    {"C", w.moderateness_constant()}};
  if (p.kind() == WindowKind::CosineSum) {
    doc["prototype"] = {{"kind", "cosine"},
                        {"coeffs", p.coefficients()},
                        {"R", p.stretch()},
                        {"normalized", p.normalized()}};
  } else {
    doc["prototype"] = {{"kind", "bspline"},
                        {"order", p.order()},
                        {"R", p.stretch()},
                        {"normalized", false}};
  }
  doc["grid"] = {{"L", g.length},
                 {"fs", g.sample_rate},
                 {"domain", std::string(to_string(g.domain))}};
  json policy = {{"kind", policy_name(bank.policy().kind)}};
  if (bank.policy().kind == FactorPolicy::Kind::Natural) {
    policy["a_tilde"] = bank.policy().a_tilde;
  }
  doc["factor_policy"] = policy;
  doc["bank_kind"] = bank_kind_name(bank.kind());
  doc["allow_gaps"] = bank.allows_coverage_holes();

  json channels = json::array();
  for (const auto& ch : bank.channels()) {
    json entry = {{"kind", channel_kind_name(ch.kind)},
                  {"m", ch.m},
                  {"center_hz", ch.center_hz},
                  {"a_m_samples", ch.a},
                  {"a_m_continuous", ch.a_continuous}};
    const int last = ch.first_bin + static_cast<int>(ch.response.size()) - 1;
    entry["support_bins"] = ch.response.empty() ? json::array()
                                                : json::array({ch.first_bin, last});
    channels.push_back(entry);
  }
  doc["channels"] = channels;
  return doc;
}

WarpedBank bank_from_json(const json& doc) {
  if (required<std::string>(doc, "format") != "warpbank-spec") {
    throw Error(ErrorCode::FormatError, "not a warpbank bank spec");
  }
  if (required<int>(doc, "format_version") != kSpecFormatVersion) {
    throw Error(ErrorCode::FormatError, "unsupported bank spec version");
  }

  const json wdoc = required<json>(doc, "warping");
  const WarpingFunction warp = WarpingFunction::restore(
      parse_warp_family(required<std::string>(wdoc, "family")),
      required<double>(wdoc, "c"), required<double>(wdoc, "d"),
      required<double>(wdoc, "l"), required<double>(wdoc, "C"));

  const json pdoc = required<json>(doc, "prototype");
  const auto pkind = required<std::string>(pdoc, "kind");
  PrototypeWindow window;
  if (pkind == "cosine") {
    const auto coeffs = required<std::vector<double>>(pdoc, "coeffs");
    window = make_cosine_window(coeffs, required<double>(pdoc, "R"));
    if (required<bool>(pdoc, "normalized")) window = normalize_for_tightness(window);
  } else if (pkind == "bspline") {
    window = make_bspline_window(required<int>(pdoc, "order"), required<double>(pdoc, "R"));
  } else {
    throw Error(ErrorCode::FormatError, "unknown prototype kind '" + pkind + "'");
  }

  const json gdoc = required<json>(doc, "grid");
  GridSpec grid;
  grid.length = required<int>(gdoc, "L");
  grid.sample_rate = required<double>(gdoc, "fs");
  grid.domain = parse_domain(required<std::string>(gdoc, "domain"));

  const json poldoc = required<json>(doc, "factor_policy");
  const auto polkind = required<std::string>(poldoc, "kind");
  std::vector<std::pair<int, int>> factors;
  for (const auto& entry : required<json>(doc, "channels")) {
    if (required<std::string>(entry, "kind") != "warped") continue;
    factors.emplace_back(required<int>(entry, "m"), required<int>(entry, "a_m_samples"));
  }
  FactorPolicy policy;
  if (polkind == "natural") {
    policy = FactorPolicy::natural(required<double>(poldoc, "a_tilde"));
  } else if (polkind == "painless") {
    policy = FactorPolicy::painless();
  } else if (polkind == "explicit") {
    policy = FactorPolicy::explicit_list(factors);
  } else {
    throw Error(ErrorCode::FormatError, "unknown factor policy '" + polkind + "'");
  }

  BuildOptions options;
  options.allow_coverage_holes = required<bool>(doc, "allow_gaps");
  WarpedBank bank = rebuild_bank(warp, window, grid, policy, std::move(factors), options);

  const auto kind = required<std::string>(doc, "bank_kind");
  if (kind == "tight") {
    bank = with_kind(std::move(bank), BankKind::Tight);
  } else if (kind == "dual") {
    bank = painless_dual(bank);
  } else if (kind != "analysis") {
    throw Error(ErrorCode::FormatError, "unknown bank kind '" + kind + "'");
  }

  // The regenerated layout must agree with the stored table.
  const json stored = required<json>(doc, "channels");
  const json regenerated = bank_to_json(bank).at("channels");
  if (stored != regenerated) {
    throw Error(ErrorCode::FormatError,
                "channel table does not match the bank regenerated from its parameters");
  }
  return bank;
}

void save_bank_spec(const std::filesystem::path& path, const WarpedBank& bank) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::InvalidParameter, "cannot write " + path.string());
  }
  out << bank_to_json(bank).dump(2) << '\n';
}

WarpedBank load_bank_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::InvalidParameter, "cannot read " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::FormatError, path.string() + ": " + e.what());
  }
  try {
    return bank_from_json(doc);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::FormatError, path.string() + ": " + e.what());
  }
}

json report_to_json(const FrameReport& r) {
  json doc;
  doc["diag_inf"] = finite_or_string(r.diag_inf);
  doc["diag_sup"] = finite_or_string(r.diag_sup);
  doc["A_suff"] = finite_or_string(r.suff_lower);
  doc["B_suff"] = finite_or_string(r.suff_upper);
  doc["suff_conclusive"] = r.suff_conclusive;
  doc["A_emp"] = finite_or_string(r.emp_lower);
  doc["B_emp"] = finite_or_string(r.emp_upper);
  doc["emp_converged"] = r.emp_converged;
  doc["tightness_ratio"] = finite_or_string(r.tightness_ratio);
  doc["painless"] = r.painless;
  json flags = json::array();
  for (const auto& [m, ok] : r.channel_painless) flags.push_back({{"m", m}, {"painless", ok}});
  doc["channel_painless"] = flags;
  doc["warnings"] = r.warnings;
  return doc;
}

json sweep_to_json(std::span<const SweepRow> rows) {
  json out = json::array();
  for (const auto& row : rows) {
    out.push_back({{"factor", row.factor},
                   {"A_emp", finite_or_string(row.emp_lower)},
                   {"B_emp", finite_or_string(row.emp_upper)},
                   {"tightness_ratio", finite_or_string(row.tightness_ratio)},
                   {"painless", row.painless}});
  }
  return out;
}

}  // namespace warpbank
