#include <gxray/io.hpp>

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace gxray::io {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << std::setprecision(17);
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<double> parse_row(const std::string& line, std::size_t expected, const fs::path& path, int line_no) {
  std::vector<double> vals;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(cell, &used));
      while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      std::ostringstream msg;
      msg << path.string() << ":" << line_no << ": cannot parse number '" << cell << "'";
      throw ConfigError(msg.str());
    }
  }
  if (vals.size() != expected) {
    std::ostringstream msg;
    msg << path.string() << ":" << line_no << ": expected " << expected << " columns, found " << vals.size();
    throw ConfigError(msg.str());
  }
  return vals;
}

bool close_angle(double a, double b) { return std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)); }

}  // namespace

void write_sinogram_csv(const fs::path& path, const BoundaryGrid& g) {
  auto out = open_out(path);
  out << "beta,alpha,re,im\n";
  for (int j = 0; j < g.n_beta(); ++j) {
    for (int i = 0; i < g.n_alpha(); ++i) {
      const cplx v = g.at(j, i);
      out << g.beta(j) << ',' << g.alpha(i) << ',' << v.real() << ',' << v.imag() << '\n';
    }
  }
  finish(out, path);
}

BoundaryGrid read_sinogram_csv(const fs::path& path, const BoundaryGrid& layout) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  BoundaryGrid g = layout.blank_like();
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line)) throw ConfigError(path.string() + ": empty file");
  ++line_no;
  if (line.rfind("beta,alpha,re,im", 0) != 0) throw ConfigError(path.string() + ":1: expected header beta,alpha,re,im");
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto row = parse_row(line, 4, path, line_no);
    if (n >= g.size()) {
      std::ostringstream msg;
      msg << path.string() << ":" << line_no << ": more rows than the " << layout.n_beta() << " x " << layout.n_alpha()
          << " grid";
      throw ConfigError(msg.str());
    }
    const int j = static_cast<int>(n) / layout.n_alpha();
    const int i = static_cast<int>(n) % layout.n_alpha();
    if (!close_angle(row[0], layout.beta(j)) || !close_angle(row[1], layout.alpha(i))) {
      std::ostringstream msg;
      msg << path.string() << ":" << line_no << ": node (" << row[0] << ", " << row[1]
          << ") does not match the configured grid node (" << layout.beta(j) << ", " << layout.alpha(i) << ")";
      throw ConfigError(msg.str());
    }
    g.at(j, i) = {row[2], row[3]};
    ++n;
  }
  if (n != g.size()) {
    std::ostringstream msg;
    msg << path.string() << ": found " << n << " rows, the configured grid has " << g.size();
    throw ConfigError(msg.str());
  }
  return g;
}

void write_disk_csv(const fs::path& path, const DiskGrid& f) {
  auto out = open_out(path);
  out << "rho,omega,re,im\n";
  for (int i = 0; i < f.n_rho(); ++i) {
    for (int j = 0; j < f.n_omega(); ++j) {
      const cplx v = f.at(i, j);
      out << f.rho(i) << ',' << f.omega(j) << ',' << v.real() << ',' << v.imag() << '\n';
    }
  }
  finish(out, path);
}

void write_moments_csv(const fs::path& path, const MomentReport& report) {
  auto out = open_out(path);
  out << "n,k,abs_inner\n";
  for (const auto& e : report.entries) out << e.index.n << ',' << e.index.k << ',' << e.abs_inner << '\n';
  finish(out, path);
}

void write_coeffs_json(const fs::path& path, const CoeffTable& c, double kappa) {
  auto out = open_out(path);
  // hand-written so every float carries 17 significant digits
  out << "{\"kappa\": " << kappa << ", \"nmax\": " << c.nmax() << ", \"entries\": [";
  bool first = true;
  for (const auto& [idx, v] : c) {
    out << (first ? "\n  " : ",\n  ") << "{\"n\": " << idx.n << ", \"k\": " << idx.k << ", \"re\": " << v.real()
        << ", \"im\": " << v.imag() << "}";
    first = false;
  }
  out << (first ? "]}\n" : "\n]}\n");
  finish(out, path);
}

CoeffFile read_coeffs_json(const fs::path& path) {
  const std::string text = read_text(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  try {
    CoeffFile out{doc.at("kappa").get<double>(), CoeffTable(doc.at("nmax").get<int>())};
    int pos = 0;
    for (const auto& e : doc.at("entries")) {
      const BasisIndex idx{e.at("n").get<int>(), e.at("k").get<int>()};
      if (!idx.in_disk_range()) {
        std::ostringstream msg;
        msg << path.string() << ": entry " << pos << " has index (" << idx.n << ", " << idx.k << ") outside 0 <= k <= n";
        throw ConfigError(msg.str());
      }
      out.table.set(idx, {e.at("re").get<double>(), e.value("im", 0.0)});
      ++pos;
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const std::out_of_range& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  finish(out, path);
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gxray::io
