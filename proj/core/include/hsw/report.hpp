#pragma once

#include <string>
#include <vector>

#include "hsw/linalg.hpp"

namespace hsw {

struct Finding {
  std::string tag;       // axiom or identity that failed
  std::string location;  // basis tuple, arrow, point ...
  std::string lhs;
  std::string rhs;
};

class ValidationReport {
public:
  bool ok() const { return findings_.empty(); }
  const std::vector<Finding>& findings() const { return findings_; }
  void add(std::string tag, std::string location, std::string lhs = {}, std::string rhs = {});
  // records a finding when a != b
  bool expect_eq(const Vec& a, const Vec& b, const std::string& tag, const std::string& location);
  bool expect_eq(const Matrix& a, const Matrix& b, const std::string& tag, const std::string& location);
  void merge(const ValidationReport& o, const std::string& prefix = {});
  // stop recording after this many findings (the count keeps going)
  void set_limit(size_t n) { limit_ = n; }
  size_t total() const { return total_; }

private:
  std::vector<Finding> findings_;
  size_t limit_ = 200;
  size_t total_ = 0;
};

std::string vec_str(const Vec& v);

}  // namespace hsw
