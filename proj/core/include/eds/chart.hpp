#pragma once

#include "eds/error.hpp"
#include "eds/expr.hpp"
#include "eds/variable.hpp"

#include <string>
#include <vector>

namespace eds {

// An ordered coordinate system. Forms and fields are always expressed
// with respect to one of these; operations require matching charts.
class Chart {
 public:
  Chart() = default;
  explicit Chart(std::vector<std::string> coords);

  int dim() const { return static_cast<int>(vars_.size()); }
  const std::vector<std::string>& coords() const { return names_; }
  VarId var(int i) const { return vars_.at(static_cast<std::size_t>(i)); }
  const std::string& coord(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  int index_of(VarId v) const;  // -1 when absent
  bool has(VarId v) const { return index_of(v) >= 0; }

  Chart extended(const std::string& extra) const;

  bool operator==(const Chart&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<VarId> vars_;
};

// Builds a point of the chart from one value per coordinate.
RationalPoint chart_point(const Chart& chart, const std::vector<Rat>& values);

}  // namespace eds
