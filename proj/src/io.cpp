#include "qd/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qd::io {

using json = nlohmann::ordered_json;

std::string format_double(double v, FloatFormat f) {
  char buf[64];
  if (f == FloatFormat::hex) {
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
  }
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

json plane_to_json(const std::vector<std::vector<double>>& plane,
                   const std::vector<std::vector<std::uint8_t>>& ok, int first_row,
                   FloatFormat f) {
  json rows = json::array();
  for (std::size_t m = first_row; m < plane.size(); ++m) {
    json row = json::array();
    for (std::size_t n = 0; n < plane[m].size(); ++n) {
      if (!ok[m][n]) {
        row.push_back(nullptr);
      } else if (f == FloatFormat::hex) {
        row.push_back(format_double(plane[m][n], f));
      } else {
        row.push_back(plane[m][n]);
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json mask_to_json(const std::vector<std::vector<std::uint8_t>>& ok, int first_row) {
  json rows = json::array();
  for (std::size_t m = first_row; m < ok.size(); ++m) {
    json row = json::array();
    for (auto v : ok[m]) row.push_back(int(v));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string table_to_json(const QdTable& t, FloatFormat f) {
  json j;
  j["algorithm"] = algo_name(t.algo);
  j["degree"] = t.degree;
  j["float_format"] = f == FloatFormat::hex ? "hex" : "shortest";
  j["q"] = plane_to_json(t.q, t.q_ok, 1, f);
  j["e"] = plane_to_json(t.e, t.e_ok, 1, f);
  j["eps_q"] = t.eps_q.empty() ? json() : plane_to_json(t.eps_q, t.q_ok, 1, f);
  j["eps_e"] = t.eps_e.empty() ? json() : plane_to_json(t.eps_e, t.e_ok, 1, f);
  j["q_lo"] = t.q_lo.empty() ? json() : plane_to_json(t.q_lo, t.q_ok, 1, f);
  j["e_lo"] = t.e_lo.empty() ? json() : plane_to_json(t.e_lo, t.e_ok, 1, f);
  j["mask"] = json{{"q", mask_to_json(t.q_ok, 1)}, {"e", mask_to_json(t.e_ok, 1)}};
  return j.dump(1);
}

std::string table_to_json(const oracle::ExactQdTable& t) {
  json j;
  j["algorithm"] = "exact";
  j["degree"] = t.degree;
  auto plane = [&](const std::vector<std::vector<BigReal>>& p,
                   const std::vector<std::vector<std::uint8_t>>& ok) {
    json rows = json::array();
    for (std::size_t m = 1; m < p.size(); ++m) {
      json row = json::array();
      for (std::size_t n = 0; n < p[m].size(); ++n) {
        if (!ok[m][n])
          row.push_back(nullptr);
        else
          row.push_back(p[m][n].get_str());
      }
      rows.push_back(std::move(row));
    }
    return rows;
  };
  j["q"] = plane(t.q, t.q_ok);
  j["e"] = plane(t.e, t.e_ok);
  j["eps_q"] = json();
  j["eps_e"] = json();
  j["q_lo"] = json();
  j["e_lo"] = json();
  j["mask"] = json{{"q", mask_to_json(t.q_ok, 1)}, {"e", mask_to_json(t.e_ok, 1)}};
  return j.dump(1);
}

namespace {

double parse_stored_double(const json& v) {
  if (v.is_string()) return std::strtod(v.get<std::string>().c_str(), nullptr);
  return v.get<double>();
}

void plane_from_json(const json& rows, std::vector<std::vector<double>>& plane,
                     std::vector<std::vector<std::uint8_t>>* ok, int first_row) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& dst = plane[first_row + i];
    for (std::size_t n = 0; n < rows[i].size() && n < dst.size(); ++n) {
      if (rows[i][n].is_null()) {
        if (ok) (*ok)[first_row + i][n] = 0;
        continue;
      }
      dst[n] = parse_stored_double(rows[i][n]);
      if (ok) (*ok)[first_row + i][n] = 1;
    }
  }
}

}  // namespace

QdTable table_from_json(const std::string& text) {
  const json j = json::parse(text);
  const std::string algo = j.at("algorithm").get<std::string>();
  if (algo == "exact")
    throw std::invalid_argument("exact tables are written, not re-ingested");

  const int degree = j.at("degree").get<int>();
  const Algo a = algo == "qd" ? Algo::qd : algo == "compqd" ? Algo::compqd : Algo::ddqd;
  QdTable t = empty_table(a, degree);
  plane_from_json(j.at("q"), t.q, &t.q_ok, 1);
  plane_from_json(j.at("e"), t.e, &t.e_ok, 1);
  if (!j.at("eps_q").is_null()) plane_from_json(j.at("eps_q"), t.eps_q, nullptr, 1);
  if (!j.at("eps_e").is_null()) plane_from_json(j.at("eps_e"), t.eps_e, nullptr, 1);
  if (!j.at("q_lo").is_null()) plane_from_json(j.at("q_lo"), t.q_lo, nullptr, 1);
  if (!j.at("e_lo").is_null()) plane_from_json(j.at("e_lo"), t.e_lo, nullptr, 1);
  return t;
}

std::vector<BigReal> read_coefficients(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::vector<BigReal> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(b, e - b + 1);
    BigReal v;
    if (!exact::parse(tok, v))
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": bad coefficient '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

void write_coefficients(const std::string& path, const std::vector<BigReal>& coeffs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  for (const auto& c : coeffs) out << c.get_str() << "\n";
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char ch : s) {
    if (ch == '"') r += '"';
    r += ch;
  }
  r += '"';
  return r;
}

}  // namespace qd::io
