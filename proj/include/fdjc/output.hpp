#pragma once

#include "fdjc/observables.hpp"

#include <map>
#include <string>
#include <vector>

namespace fdjc {

/// 17-significant-digit decimal rendering, the canonical float format of
/// every emitted file (round-trips doubles exactly).
std::string fmt17(double v);

/// CSV with header scaled_t,value; when `oracle` is given the columns are
/// scaled_t,value,value_oracle,abs_diff. ASCII, LF line endings.
void write_csv(const std::string& path, const ObservableSeries& series,
               const ObservableSeries* oracle = nullptr);

/// Fixed-size SVG line plot. W is drawn on a fixed [-1, 1] axis; everything
/// else autoscales.
void write_svg(const std::string& path, const ObservableSeries& series);

/// key = value manifest echoing the resolved parameters and code version.
void write_manifest(const std::string& path, const std::map<std::string, std::string>& keys,
                    const std::string& preset_label);

} // namespace fdjc
