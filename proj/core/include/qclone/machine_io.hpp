// Machine-spec documents (JSON).
//
//   {"name": "meridional", "variant": "explicit", "apparatus_dim": 2,
//    "Q0": [[re, im], ...], "Q1": [...], "Y0": [...], "Y1": [...]}
//
//   {"name": "universal", "variant": "channel", "fidelity": 0.8333333333333334}
//
// Doubles are written in shortest round-trip form (at most 17 significant
// digits).

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qclone/machines.hpp"

namespace qclone {

class SpecFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SpecIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CloningSpec parse_machine_spec(std::string_view text);
std::string format_machine_spec(const CloningSpec& spec);

CloningSpec load_machine_spec(const std::filesystem::path& path);
void save_machine_spec(const CloningSpec& spec, const std::filesystem::path& path);

}  // namespace qclone
