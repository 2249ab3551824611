#pragma once

#include "wavelab/radialop.hpp"

#include <map>
#include <optional>
#include <string>

namespace wavelab {

// Numbers print in shortest round-trip form ("2", "2.0" and "2e0" agree); other text is trimmed.
std::string canonical_value(const std::string& text);
// FNV-1a over the canonical "key=value;" sequence, sorted by key, as 16 hex digits.
std::string cache_key(const std::map<std::string, std::string>& section);

// Section describing a discrete operator: n, R, M and the potential if any.
std::map<std::string, std::string> operator_section(const DiscreteOperator& op);

void save_eigenpairs(const std::string& path, const Eigenpairs& eig);
// Empty if the file is missing, truncated or of a different size.
std::optional<Eigenpairs> load_eigenpairs(const std::string& path, int expected_size);

// Eigenpairs of op, read from or written to dir/<key>.eig. An empty dir disables the cache.
Eigenpairs cached_decompose(const DiscreteOperator& op, const std::string& dir);

}  // namespace wavelab
