#pragma once

#include <string>

#include "json.hpp"
#include "jspec/regularization.hpp"
#include "jspec/spectra.hpp"

namespace jspec::config {

using json = nlohmann::ordered_json;

// {"family": "linear_free", "w": 1}
// {"family": "bessel_compact", "alpha": 0.3, "beta": 0.7}
// {"family": "q_geometric", "q": 0.5, "beta": {"re": 0, "im": 0.7}}
// {"family": "table", "first": -2, "lambda": [...], "w": [...], "ratio": 0.5, "p": 1}
// plus optional "perturbation": [{"n": 0, "lambda": ..., "w": ...}].
// Complex values are numbers or {"re", "im"} objects.
OperatorSpec spec_from_json(const json& j);
OperatorSpec load_spec(const std::string& path);

cplx complex_from_json(const json& j);
json to_json(cplx z);

// "1.5", "-2i", "0.5+0.5i", "1e-3-2e-1i"
cplx parse_complex(const std::string& s);
// "a,b,c,d" = re_min, re_max, im_min, im_max
Box parse_region(const std::string& s);
// "lo,hi"
std::pair<long, long> parse_range(const std::string& s);

json to_json(const SpectrumReport& r);
json to_json(const SolutionSlice& s);
json error_json(ErrorKind kind, const std::string& message);

}  // namespace jspec::config
