#ifndef VARCONV_IO_HPP
#define VARCONV_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "varconv/measure.hpp"

namespace varconv::io {

// "k<TAB>mass" per line, '#' comments, arbitrary order.
LatticeMeasure measure_from_tsv_text(const std::string& text);
LatticeMeasure measure_from_tsv_file(const std::string& path);
std::string measure_to_tsv_text(const LatticeMeasure& mu); // 17 significant digits
void measure_to_tsv_file(const LatticeMeasure& mu, const std::string& path);

// one value per line, '#' comments allowed
std::vector<double> sequence_from_csv_text(const std::string& text);
std::vector<double> sequence_from_csv_file(const std::string& path);

// {"family": "lazy-walk"|"remark19"|"explicit", "params": {...}}
MeasureFamily family_from_json(const nlohmann::json& spec);
MeasureFamily family_from_json_text(const std::string& text);

ASequence a_sequence_from_json(const nlohmann::json& spec);

std::string format_g17(double x);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace varconv::io

#endif
