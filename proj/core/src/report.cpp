#include "hsw/report.hpp"

namespace hsw {

void ValidationReport::add(std::string tag, std::string location, std::string lhs, std::string rhs) {
  ++total_;
  if (findings_.size() >= limit_) return;
  findings_.push_back({std::move(tag), std::move(location), std::move(lhs), std::move(rhs)});
}

bool ValidationReport::expect_eq(const Vec& a, const Vec& b, const std::string& tag, const std::string& location) {
  if (a == b) return true;
  add(tag, location, vec_str(a), vec_str(b));
  return false;
}

bool ValidationReport::expect_eq(const Matrix& a, const Matrix& b, const std::string& tag, const std::string& location) {
  if (a == b) return true;
  add(tag, location, a.str(), b.str());
  return false;
}

void ValidationReport::merge(const ValidationReport& o, const std::string& prefix) {
  for (const auto& f : o.findings_) add(prefix.empty() ? f.tag : prefix + "/" + f.tag, f.location, f.lhs, f.rhs);
  // findings past the other report's limit still count
  total_ += o.total_ - o.findings_.size();
}

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

}  // namespace hsw
