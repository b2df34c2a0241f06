#pragma once

#include <filesystem>
#include <iosfwd>

#include "qcorr/filtering.hpp"
#include "qcorr/qstate.hpp"

namespace qcorr {

/// State files hold one object {"re": [[..4x4..]], "im": [[..4x4..]]},
/// row-major in the |00>,|01>,|10>,|11> basis, 17 significant digits.
void write_state(std::ostream& out, const DensityMatrix& rho);
void write_state(const std::filesystem::path& path, const DensityMatrix& rho);

DensityMatrix read_state(std::istream& in);
DensityMatrix read_state(const std::filesystem::path& path);

/// Filter-pair result files: {"fA": {re,im}, "fB": {re,im},
/// "normal_form": {re,im}, "p_succ": .., "converged": ..}.
void write_normal_form_result(std::ostream& out, const NormalFormResult& result);
void write_normal_form_result(const std::filesystem::path& path,
                              const NormalFormResult& result);

NormalFormResult read_normal_form_result(const std::filesystem::path& path);

}  // namespace qcorr
