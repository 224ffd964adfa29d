#include "varconv/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "varconv/error.hpp"

namespace varconv::io {

namespace {

std::string strip(const std::string& line) {
  std::string s = line;
  if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

} // namespace

std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_error, "cannot write " + path);
  out << content;
}

LatticeMeasure measure_from_tsv_text(const std::string& text) {
  std::vector<std::pair<std::int64_t, double>> pts;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string s = strip(line);
    if (s.empty()) continue;
    std::istringstream ls(s);
    std::int64_t k;
    double mass;
    if (!(ls >> k >> mass)) fail(errc::io_error, "bad measure line: " + line);
    pts.emplace_back(k, mass);
  }
  return LatticeMeasure::from_points(pts);
}

LatticeMeasure measure_from_tsv_file(const std::string& path) {
  return measure_from_tsv_text(read_file(path));
}

std::string measure_to_tsv_text(const LatticeMeasure& mu) {
  std::ostringstream out;
  const auto& w = mu.weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    out << (mu.offset() + static_cast<std::int64_t>(i)) << '\t' << format_g17(w[i]) << '\n';
  }
  return out.str();
}

void measure_to_tsv_file(const LatticeMeasure& mu, const std::string& path) {
  write_file(path, measure_to_tsv_text(mu));
}

std::vector<double> sequence_from_csv_text(const std::string& text) {
  std::vector<double> xs;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string s = strip(line);
    if (s.empty()) continue;
    try {
      xs.push_back(std::stod(s));
    } catch (const std::exception&) {
      fail(errc::io_error, "bad sequence line: " + line);
    }
  }
  return xs;
}

std::vector<double> sequence_from_csv_file(const std::string& path) {
  return sequence_from_csv_text(read_file(path));
}

ASequence a_sequence_from_json(const nlohmann::json& a) {
  if (a.is_number()) return ASequence::constant(a.get<double>());
  if (!a.is_object() || !a.contains("kind"))
    fail(errc::config_error, "a-sequence spec needs a \"kind\"");
  const std::string kind = a.at("kind").get<std::string>();
  if (kind == "const") return ASequence::constant(a.at("value").get<double>());
  if (kind == "inv-square") return ASequence::inv_square();
  if (kind == "list") return ASequence::list(a.at("values").get<std::vector<double>>());
  fail(errc::config_error, "unknown a-sequence kind: " + kind);
}

MeasureFamily family_from_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("family"))
    fail(errc::config_error, "family spec needs a \"family\" field");
  const std::string name = spec.at("family").get<std::string>();
  const nlohmann::json params = spec.value("params", nlohmann::json::object());
  if (name == "lazy-walk") {
    return MeasureFamily::lazy_walk(params.value("p", 0.5));
  }
  if (name == "remark19") {
    if (params.contains("a")) return MeasureFamily::remark19(a_sequence_from_json(params.at("a")));
    return MeasureFamily::remark19(ASequence::inv_square()); // default regime
  }
  if (name == "explicit") {
    if (!params.contains("measures"))
      fail(errc::config_error, "explicit family needs \"measures\"");
    std::vector<LatticeMeasure> ms;
    for (const auto& m : params.at("measures")) {
      std::vector<std::pair<std::int64_t, double>> pts;
      for (const auto& p : m)
        pts.emplace_back(p.at(0).get<std::int64_t>(), p.at(1).get<double>());
      ms.push_back(LatticeMeasure::from_points(pts));
    }
    return MeasureFamily::explicit_list(std::move(ms));
  }
  fail(errc::config_error, "unknown family: " + name);
}

MeasureFamily family_from_json_text(const std::string& text) {
  nlohmann::json spec;
  try {
    spec = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(errc::config_error, std::string("bad family JSON: ") + e.what());
  }
  return family_from_json(spec);
}

} // namespace varconv::io
