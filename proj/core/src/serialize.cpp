#include "spincat/serialize.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "spincat/errors.hpp"

namespace spincat {

namespace {

constexpr std::array<const char*, 8> kFields = {"q1", "p1", "q2", "p2", "W", "W2", "I", "budget"};

std::array<double, 8> to_array(const SweepRecord& r) {
  return {r.q1, r.p1, r.q2, r.p2, r.w, r.w2, r.skew, r.budget};
}

SweepRecord from_array(const std::array<double, 8>& v) {
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]};
}

double parse_double(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument("read_csv: bad number '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  if (ec != std::errc()) throw NumericalError("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

void write_csv(const SweepResult& result, std::ostream& out) {
  out << "# meta: " << result.meta.dump() << '\n';
  out << kCsvHeader << '\n';
  for (const auto& r : result.records) {
    const auto v = to_array(r);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out << ',';
      out << format_double(v[i]);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_csv: write failed");
}

void write_json(const SweepResult& result, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["meta"] = result.meta;
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& r : result.records) {
    nlohmann::ordered_json row;
    const auto v = to_array(r);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (std::isnan(v[i])) row[kFields[i]] = nullptr;
      else row[kFields[i]] = v[i];
    }
    records.push_back(std::move(row));
  }
  doc["records"] = std::move(records);
  out << doc.dump(1) << '\n';
  if (!out) throw std::runtime_error("write_json: write failed");
}

SweepResult read_csv(std::istream& in) {
  SweepResult result;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      constexpr std::string_view tag = "# meta: ";
      if (line.rfind(tag, 0) == 0) result.meta = nlohmann::ordered_json::parse(line.substr(tag.size()));
      continue;
    }
    if (!header) {
      if (line != kCsvHeader) throw InvalidArgument("read_csv: unexpected header '" + line + "'");
      header = true;
      continue;
    }
    std::array<double, 8> v{};
    std::size_t field = 0, start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        if (field >= v.size()) throw InvalidArgument("read_csv: too many fields");
        v[field++] = parse_double(std::string_view(line).substr(start, i - start));
        start = i + 1;
      }
    }
    if (field != v.size()) throw InvalidArgument("read_csv: too few fields");
    result.records.push_back(from_array(v));
  }
  if (!header) throw InvalidArgument("read_csv: missing header");
  return result;
}

SweepResult read_json(std::istream& in) {
  const auto doc = nlohmann::ordered_json::parse(in);
  SweepResult result;
  result.meta = doc.at("meta");
  for (const auto& row : doc.at("records")) {
    std::array<double, 8> v{};
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& x = row.at(kFields[i]);
      v[i] = x.is_null() ? std::numeric_limits<double>::quiet_NaN() : x.get<double>();
    }
    result.records.push_back(from_array(v));
  }
  return result;
}

}  // namespace spincat
