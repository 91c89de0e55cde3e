#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "recipgamma/errors.hpp"
#include "recipgamma/harness.hpp"

namespace recipgamma {

using nlohmann::json;

namespace {

const char* const kHeader = "model,method,scenario,n,param,ess,sess,ct_seconds,mse,accept_rate";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

}  // namespace

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw ConfigError("format: expected csv or json, got '" + name + "'");
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << kHeader << '\n';
  for (const auto& r : rows) {
    os << quote(r.model) << ',' << quote(r.method) << ',' << quote(r.scenario) << ',' << r.n << ','
       << quote(r.param) << ',' << fmt(r.ess) << ',' << fmt(r.sess) << ',' << fmt(r.ct_seconds) << ','
       << fmt(r.mse) << ',' << fmt(r.accept_rate) << '\n';
  }
  return os.str();
}

std::vector<ReportRow> rows_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kHeader) throw std::runtime_error("report csv: unexpected header");
  std::vector<ReportRow> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 10) throw std::runtime_error("report csv: line " + std::to_string(lineno) + " has wrong column count");
    try {
      rows.push_back({f[0], f[1], f[2], std::stoi(f[3]), f[4], std::stod(f[5]), std::stod(f[6]), std::stod(f[7]),
                      std::stod(f[8]), std::stod(f[9])});
    } catch (const std::logic_error&) {
      throw std::runtime_error("report csv: line " + std::to_string(lineno) + " has a malformed number");
    }
  }
  return rows;
}

json rows_to_json(const std::vector<ReportRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"model", r.model},
                   {"method", r.method},
                   {"scenario", r.scenario},
                   {"n", r.n},
                   {"param", r.param},
                   {"ess", r.ess},
                   {"sess", r.sess},
                   {"ct_seconds", r.ct_seconds},
                   {"mse", r.mse},
                   {"accept_rate", r.accept_rate}});
  }
  return out;
}

std::vector<ReportRow> rows_from_json(const json& doc) {
  if (!doc.is_array()) throw std::runtime_error("report json: expected an array of rows");
  std::vector<ReportRow> rows;
  for (const auto& o : doc) {
    rows.push_back({o.at("model").get<std::string>(), o.at("method").get<std::string>(),
                    o.at("scenario").get<std::string>(), o.at("n").get<int>(), o.at("param").get<std::string>(),
                    o.at("ess").get<double>(), o.at("sess").get<double>(), o.at("ct_seconds").get<double>(),
                    o.at("mse").get<double>(), o.at("accept_rate").get<double>()});
  }
  return rows;
}

void report(const std::vector<ReportRow>& rows, ReportFormat format, const std::string& out_path) {
  require(!rows.empty(), "report: no rows to write");
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::runtime_error("report: cannot open '" + out_path + "' for writing");
  if (format == ReportFormat::csv)
    os << rows_to_csv(rows);
  else
    os << rows_to_json(rows).dump(2) << '\n';
  if (!os) throw std::runtime_error("report: write to '" + out_path + "' failed");
}

std::vector<ReportRow> read_report(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("report: cannot open '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') return rows_from_json(json::parse(text));
  return rows_from_csv(text);
}

std::string replications_to_csv(const ExperimentSpec& spec, const std::vector<ReplicationResult>& reps) {
  const auto names = param_names(spec);
  std::ostringstream os;
  os << "rep,ok,param,posterior_mean,ess,accept_rate,ct_seconds,error\n";
  for (const auto& r : reps) {
    if (!r.ok) {
      os << r.rep << ",0,,,,,," << quote(r.error) << '\n';
      continue;
    }
    for (std::size_t j = 0; j < names.size(); ++j) {
      os << r.rep << ",1," << names[j] << ',' << fmt(r.posterior_mean[j]) << ',' << fmt(r.ess[j]) << ','
         << fmt(r.accept_rate[j]) << ',' << fmt(r.ct_seconds) << ",\n";
    }
  }
  return os.str();
}

}  // namespace recipgamma
