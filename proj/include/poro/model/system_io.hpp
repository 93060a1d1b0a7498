#pragma once

#include <filesystem>

#include "poro/model/poro_system.hpp"

namespace poro::model {

/// Directory layout:
///   A.mtx B.mtx C.mtx D.mtx      coordinate Matrix Market
///   u0.mtx p0.mtx f_<i>.mtx g_<i>.mtx   array Matrix Market
///   manifest.txt                 key/value lines, see docs/formats.md
void save_system(const std::filesystem::path& dir, const PoroSystem& sys);
PoroSystem load_system(const std::filesystem::path& dir);

}  // namespace poro::model
