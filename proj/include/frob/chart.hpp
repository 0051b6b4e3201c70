#pragma once

#include <memory>
#include <string>
#include <vector>

#include "frob/numbers.hpp"

namespace frob {

enum class Domain { Real, Complex };

// A coordinate chart.  Complex charts carry one formal conjugate variable
// per coordinate ("polarization"): for a coordinate z the conjugate slot is
// named z_bar and holomorphic derivatives/anti-holomorphic derivatives are
// both exact formal operators.  dimension() counts coordinates only;
// var_count() counts all formal variables.
class Chart {
 public:
  Chart(std::vector<std::string> names, Domain domain) : names_(std::move(names)), domain_(domain) {
    for (size_t i = 0; i < names_.size(); ++i) {
      for (size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j]) throw Error("duplicate chart variable: " + names_[i]);
    }
    vars_ = names_;
    if (domain_ == Domain::Complex) {
      for (const auto& n : names_) vars_.push_back(n + "_bar");
      for (size_t i = 0; i < names_.size(); ++i) {
        for (size_t j = 0; j < names_.size(); ++j)
          if (vars_[names_.size() + i] == names_[j])
            throw Error("coordinate name collides with conjugate slot: " + names_[j]);
      }
    }
  }

  size_t dimension() const { return names_.size(); }
  size_t var_count() const { return vars_.size(); }
  Domain domain() const { return domain_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::string& var_name(size_t i) const { return vars_.at(i); }

  // index into vars(), or -1
  int index_of(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return static_cast<int>(i);
    return -1;
  }
  // conjugate slot of variable i (complex charts); i itself on real charts
  size_t conj_index(size_t i) const {
    if (domain_ == Domain::Real) return i;
    size_t n = names_.size();
    return i < n ? i + n : i - n;
  }
  bool is_conjugate_slot(size_t i) const { return domain_ == Domain::Complex && i >= names_.size(); }

  friend bool operator==(const Chart& a, const Chart& b) {
    return a.domain_ == b.domain_ && a.names_ == b.names_;
  }
  friend bool operator!=(const Chart& a, const Chart& b) { return !(a == b); }

 private:
  std::vector<std::string> names_;
  Domain domain_;
  std::vector<std::string> vars_;
};

using ChartPtr = std::shared_ptr<const Chart>;

inline ChartPtr make_chart(std::vector<std::string> names, Domain domain = Domain::Real) {
  return std::make_shared<const Chart>(std::move(names), domain);
}

inline ChartPtr product_chart(const ChartPtr& base, const std::vector<std::string>& extra) {
  std::vector<std::string> names = base->names();
  names.insert(names.end(), extra.begin(), extra.end());
  return make_chart(std::move(names), base->domain());
}

inline void require_same_chart(const ChartPtr& a, const ChartPtr& b, const char* where) {
  if (a.get() == b.get()) return;
  if (!a || !b || *a != *b) throw ChartMismatch(std::string("chart mismatch in ") + where);
}

// A point of a chart: one exact coordinate value per chart coordinate.
// On complex charts the conjugate slots are bound to the numeric conjugates.
struct Point {
  ChartPtr chart;
  std::vector<GRational> coords;

  Point() = default;
  Point(ChartPtr c, std::vector<GRational> xs) : chart(std::move(c)), coords(std::move(xs)) {
    if (coords.size() != chart->dimension()) throw Error("point/chart dimension mismatch");
  }

  // values for every formal variable, conjugates included
  std::vector<GRational> full_values() const {
    std::vector<GRational> v = coords;
    if (chart->domain() == Domain::Complex)
      for (const auto& z : coords) v.push_back(z.conj());
    return v;
  }
};
}  // namespace frob
