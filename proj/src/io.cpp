#include "xstates/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace xstates::io {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(const Json& j, std::ostream& os, int indent, int depth) {
  const bool pretty = indent >= 0;
  auto newline = [&](int level) {
    if (pretty) os << '\n' << std::string(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ',';
        first = false;
        newline(depth + 1);
        os << Json(key).dump() << (pretty ? ": " : ":");
        emit(value, os, indent, depth + 1);
      }
      newline(depth);
      os << '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) os << (pretty ? ", " : ",");
        first = false;
        emit(value, os, -1, depth + 1);
      }
      os << ']';
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
      return;
  }
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
  throw Error(ErrorKind::ParseError, "expected a number, [re, im] or {re, im}");
}

Json complex_to_json(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

template <class F>
auto parse_guard(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

double required_number(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing key '") + key + "'");
  if (!j.at(key).is_number()) throw Error(ErrorKind::ParseError, std::string("key '") + key + "' is not a number");
  return j.at(key).get<double>();
}

}  // namespace

std::string dump(const Json& j, int indent) {
  std::ostringstream os;
  emit(j, os, indent, 0);
  return os.str();
}

Json state_to_json(const XState& x) {
  Json j;
  j["a"] = x.a();
  j["b"] = x.b();
  j["c"] = x.c();
  j["d"] = x.d();
  j["z"] = complex_to_json(x.z());
  j["w"] = complex_to_json(x.w());
  return j;
}

XState state_from_json(const Json& j) {
  return parse_guard([&] {
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "state must be a JSON object");
    if (j.contains("matrix")) return from_matrix(matrix_from_json(j.at("matrix")));
    const Complex z = j.contains("z") ? complex_from_json(j.at("z")) : Complex{};
    const Complex w = j.contains("w") ? complex_from_json(j.at("w")) : Complex{};
    return validate(required_number(j, "a"), required_number(j, "b"), required_number(j, "c"),
                    required_number(j, "d"), z, w);
  });
}

Json matrix_to_json(const Matrix4& m) {
  Json rows = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 4; ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(row);
  }
  return rows;
}

Matrix4 matrix_from_json(const Json& j) {
  return parse_guard([&] {
    if (!j.is_array() || j.size() != 4) throw Error(ErrorKind::ParseError, "matrix must have 4 rows");
    Matrix4 m;
    for (int r = 0; r < 4; ++r) {
      const Json& row = j[static_cast<std::size_t>(r)];
      if (!row.is_array() || row.size() != 4) throw Error(ErrorKind::ParseError, "matrix rows must have 4 entries");
      for (int c = 0; c < 4; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
  });
}

Matrix4 operator_from_json(const Json& j) {
  return parse_guard([&] {
    if (j.is_array()) return matrix_from_json(j);
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "operator must be a matrix or a Pauli-string object");
    if (j.contains("matrix")) return matrix_from_json(j.at("matrix"));
    const Json& terms = j.contains("pauli") ? j.at("pauli") : j;
    Matrix4 m = Matrix4::Zero();
    for (const auto& [label, coefficient] : terms.items()) m += complex_from_json(coefficient) * pauli_string(label);
    return m;
  });
}

Json report_to_json(const MeasureReport& r) {
  Json j;
  j["concurrence"] = r.concurrence;
  j["negativity"] = r.negativity;
  j["fef"] = r.fef;
  j["fef_fidelity"] = r.fef_fidelity;
  j["schmidt_values"] = Json::array({r.schmidt_values[0], r.schmidt_values[1], r.schmidt_values[2], r.schmidt_values[3]});
  j["schmidt_number"] = r.schmidt_number;
  j["geometric_discord_general"] = r.geometric_discord_general;
  j["geometric_discord_paper"] = r.geometric_discord_paper;
  j["approx_discord"] = r.approx_discord;
  j["classical_correlation"] = r.classical_correlation;
  j["mutual_information"] = r.mutual_information;
  j["mid"] = r.mid;
  j["mmm_discord"] = r.mmm_discord ? Json(*r.mmm_discord) : Json(nullptr);
  j["purity"] = r.purity;
  j["entropy"] = r.entropy;
  j["discord_side"] = r.discord_side == Side::A ? "A" : "B";
  j["geometric_side"] = r.geometric_side == Side::A ? "A" : "B";
  return j;
}

std::string report_to_csv(const MeasureReport& r) {
  const Json j = report_to_json(r);
  std::string header;
  std::string values;
  auto add = [&](const std::string& key, const std::string& value) {
    header += (header.empty() ? "" : ",") + key;
    values += (values.empty() ? "" : ",") + value;
  };
  for (const auto& [key, value] : j.items()) {
    if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i)
        add(key + "_" + std::to_string(i + 1), format_double(value[i].get<double>()));
    } else if (value.is_number_float()) {
      add(key, format_double(value.get<double>()));
    } else if (value.is_null()) {
      add(key, "");
    } else if (value.is_string()) {
      add(key, value.get<std::string>());
    } else {
      add(key, value.dump());
    }
  }
  return header + "\n" + values + "\n";
}

Json campaign_to_json(const CampaignStats& s) {
  static constexpr const char* kKeys[] = {"frac_gt_1e3", "frac_gt_1e4", "frac_gt_1e5", "frac_gt_1e6",
                                          "frac_gt_1e7"};
  Json j;
  j["n"] = s.n;
  j["seed"] = s.seed;
  j["grid"] = s.grid;
  j["max_err"] = s.max_err;
  j["mean_err"] = s.mean_err;
  for (std::size_t k = 0; k < s.frac_gt.size(); ++k) j[kKeys[k]] = s.frac_gt[k];
  j["worst_index"] = s.worst_index;
  return j;
}

DynamicsConfig dynamics_config_from_json(const Json& j) {
  return parse_guard([&] {
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "dynamics config must be a JSON object");
    DynamicsConfig cfg;
    if (j.contains("hamiltonian")) cfg.spec.hamiltonian = operator_from_json(j.at("hamiltonian"));
    if (j.contains("lindblad"))
      for (const Json& op : j.at("lindblad")) cfg.spec.operators.push_back(operator_from_json(op));
    const auto k = static_cast<Eigen::Index>(cfg.spec.operators.size());
    cfg.spec.coupling = MatrixX::Zero(k, k);
    if (j.contains("h")) {
      const Json& h = j.at("h");
      if (!h.is_array() || static_cast<Eigen::Index>(h.size()) != k)
        throw Error(ErrorKind::InvalidCoupling, "h must be a k x k array for k Lindblad operators");
      for (Eigen::Index r = 0; r < k; ++r) {
        const Json& row = h[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != k)
          throw Error(ErrorKind::InvalidCoupling, "h must be a k x k array for k Lindblad operators");
        for (Eigen::Index c = 0; c < k; ++c) cfg.spec.coupling(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
      }
    } else if (j.contains("rates")) {
      const Json& rates = j.at("rates");
      if (!rates.is_array() || static_cast<Eigen::Index>(rates.size()) != k)
        throw Error(ErrorKind::InvalidCoupling, "rates must list one value per Lindblad operator");
      for (Eigen::Index r = 0; r < k; ++r) cfg.spec.coupling(r, r) = rates[static_cast<std::size_t>(r)].get<double>();
    } else if (k > 0) {
      throw Error(ErrorKind::InvalidCoupling, "Lindblad operators given without h or rates");
    }
    cfg.options.dt = j.value("dt", cfg.options.dt);
    cfg.options.t_max = j.value("t_max", cfg.options.t_max);
    cfg.options.sample_every = j.value("sample_every", cfg.options.sample_every);
    if (j.contains("measures")) {
      cfg.options.measures.clear();
      for (const Json& m : j.at("measures")) cfg.options.measures.push_back(measure_from_string(m.get<std::string>()));
    }
    if (j.contains("initial_state")) cfg.initial_state = state_from_json(j.at("initial_state"));
    return cfg;
  });
}

KrausSet kraus_from_json(const Json& j) {
  return parse_guard([&] {
    if (!j.is_object() || !j.contains("kraus") || !j.at("kraus").is_array())
      throw Error(ErrorKind::ParseError, "Kraus file needs a 'kraus' array");
    KrausSet set;
    for (const Json& op : j.at("kraus")) set.operators.push_back(operator_from_json(op));
    return set;
  });
}

void write_trajectory_csv(std::ostream& out, const Trajectory& t) {
  out << "time,a,b,c,d,z_re,z_im,w_re,w_im";
  for (MeasureId id : t.measure_ids) out << ',' << to_string(id);
  out << '\n';
  for (std::size_t k = 0; k < t.states.size(); ++k) {
    const XState& x = t.states[k];
    out << format_double(t.times[k]) << ',' << format_double(x.a()) << ',' << format_double(x.b()) << ','
        << format_double(x.c()) << ',' << format_double(x.d()) << ',' << format_double(x.z().real()) << ','
        << format_double(x.z().imag()) << ',' << format_double(x.w().real()) << ','
        << format_double(x.w().imag());
    for (double v : t.measures[k]) out << ',' << format_double(v);
    out << '\n';
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw Error(ErrorKind::IoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorKind::IoError, "cannot rename into " + path.string());
  }
}

}  // namespace xstates::io
