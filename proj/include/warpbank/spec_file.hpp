#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "json.hpp"
#include "warpbank/bank.hpp"
#include "warpbank/diagnostics.hpp"

namespace warpbank {

inline constexpr int kSpecFormatVersion = 1;

/// Bank-spec document: warping, prototype, grid, factor policy and the
/// per-channel table. Responses are not stored; loading regenerates them from
/// the closed-form evaluators.
nlohmann::json bank_to_json(const WarpedBank& bank);

/// Throws Error(FormatError) for malformed documents and the usual build
/// errors when the stored parameters are invalid.
WarpedBank bank_from_json(const nlohmann::json& doc);

void save_bank_spec(const std::filesystem::path& path, const WarpedBank& bank);
WarpedBank load_bank_spec(const std::filesystem::path& path);

nlohmann::json report_to_json(const FrameReport& report);
nlohmann::json sweep_to_json(std::span<const SweepRow> rows);

std::string bank_kind_name(BankKind kind);

}  // namespace warpbank
