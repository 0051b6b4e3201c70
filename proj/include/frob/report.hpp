#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "frob/chart.hpp"

namespace frob {

struct CheckEntry {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool informational = false;  // reported but not aggregated into the verdict
};

struct Report {
  std::vector<CheckEntry> entries;
  std::vector<Point> points;
  std::string note;

  void add(const std::string& name, double residual, double tol) {
    entries.push_back({name, residual, tol, residual <= tol, false});
  }
  void add_flag(const std::string& name, bool ok) {
    entries.push_back({name, ok ? 0.0 : 1.0, 0.0, ok, false});
  }
  void add_info(const std::string& name, double value) {
    entries.push_back({name, value, 0.0, true, true});
  }
  void absorb(const Report& other, const std::string& prefix) {
    for (auto e : other.entries) {
      e.name = prefix + e.name;
      entries.push_back(std::move(e));
    }
  }
  bool pass() const {
    for (const auto& e : entries)
      if (!e.informational && !e.pass) return false;
    return true;
  }
  double residual(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return e.residual;
    throw Error("no such check entry: " + name);
  }
  bool entry_pass(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return e.pass;
    throw Error("no such check entry: " + name);
  }
};

inline std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

inline std::string summary(const Report& r) {
  std::string out;
  for (const auto& e : r.entries) {
    out += e.informational ? "info  " : "check ";
    out += e.name + " residual " + format_double(e.residual);
    if (!e.informational) {
      out += " tol " + format_double(e.tol);
      out += e.pass ? " pass" : " FAIL";
    }
    out += "\n";
  }
  out += r.pass() ? "verdict pass\n" : "verdict FAIL\n";
  return out;
}
}  // namespace frob
