#include "config.hpp"

#include <gxray/io.hpp>

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace gxray::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!known.count(it.key())) throw ConfigError("unknown config key '" + where + it.key() + "'");
  }
}

template <class T>
void read_field(const json& obj, const char* key, T& dst, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    dst = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config key '" + where + key + "': " + e.what());
  }
}

void require_positive(int v, const char* name) {
  if (v <= 0) {
    std::ostringstream msg;
    msg << "config: " << name << " must be positive, got " << v;
    throw ConfigError(msg.str());
  }
}

}  // namespace

void RunConfig::validate() const {
  if (!(std::abs(kappa) < 1.0)) {
    std::ostringstream msg;
    msg << "config: kappa must lie in (-1, 1), got " << kappa;
    throw ConfigError(msg.str());
  }
  if (nmax < -1) throw ConfigError("config: nmax must be >= 0 (or -1 for an empty index range)");
  require_positive(n_beta, "n_beta");
  require_positive(n_alpha, "n_alpha");
  require_positive(n_rho, "n_rho");
  require_positive(n_omega, "n_omega");
  require_positive(fiber_fft, "fiber_fft");
  require_positive(forward_nodes, "forward_nodes");
  require_positive(forward_panels, "forward_panels");
  require_positive(fiber_nodes, "fiber_nodes");
  require_positive(kpad, "kpad");
  if (fiber_fft < 4 || (fiber_fft & (fiber_fft - 1)) != 0) throw ConfigError("config: fiber_fft must be a power of two >= 4");
  if (!(noise.level >= 0.0) || !std::isfinite(noise.level)) throw ConfigError("config: noise level must be >= 0");
  if (!(moment_threshold > 0.0)) throw ConfigError("config: moment_threshold must be positive");
  if (regularization.kind == Regularization::Kind::spectral_cutoff && !(regularization.sigma_min >= 0.0)) {
    throw ConfigError("config: regularization sigma_min must be >= 0");
  }
  if (phantom != "unit" && phantom != "gaussian") throw ConfigError("config: phantom must be 'unit' or 'gaussian'");
}

json to_json(const RunConfig& c) {
  json reg{{"kind", c.regularization.kind == Regularization::Kind::truncation ? "truncation" : "spectral_cutoff"},
           {"sigma_min", c.regularization.sigma_min}};
  return json{{"kappa", c.kappa},
              {"nmax", c.nmax},
              {"n_beta", c.n_beta},
              {"n_alpha", c.n_alpha},
              {"n_rho", c.n_rho},
              {"n_omega", c.n_omega},
              {"fiber_fft", c.fiber_fft},
              {"forward_nodes", c.forward_nodes},
              {"forward_panels", c.forward_panels},
              {"fiber_nodes", c.fiber_nodes},
              {"kpad", c.kpad},
              {"moment_threshold", c.moment_threshold},
              {"noise", {{"seed", c.noise.seed}, {"level", c.noise.level}}},
              {"regularization", reg},
              {"phantom", c.phantom},
              {"coeffs", c.coeffs},
              {"input", c.input},
              {"out", c.out}};
}

RunConfig from_json(const json& doc) {
  RunConfig c;
  reject_unknown(doc,
                 {"kappa", "nmax", "n_beta", "n_alpha", "n_rho", "n_omega", "fiber_fft", "forward_nodes",
                  "forward_panels", "fiber_nodes", "kpad", "moment_threshold", "noise", "regularization", "phantom",
                  "coeffs", "input", "out"},
                 "");
  read_field(doc, "kappa", c.kappa, "");
  read_field(doc, "nmax", c.nmax, "");
  read_field(doc, "n_beta", c.n_beta, "");
  read_field(doc, "n_alpha", c.n_alpha, "");
  read_field(doc, "n_rho", c.n_rho, "");
  read_field(doc, "n_omega", c.n_omega, "");
  read_field(doc, "fiber_fft", c.fiber_fft, "");
  read_field(doc, "forward_nodes", c.forward_nodes, "");
  read_field(doc, "forward_panels", c.forward_panels, "");
  read_field(doc, "fiber_nodes", c.fiber_nodes, "");
  read_field(doc, "kpad", c.kpad, "");
  read_field(doc, "moment_threshold", c.moment_threshold, "");
  read_field(doc, "phantom", c.phantom, "");
  read_field(doc, "coeffs", c.coeffs, "");
  read_field(doc, "input", c.input, "");
  read_field(doc, "out", c.out, "");
  if (doc.contains("noise")) {
    const json& n = doc.at("noise");
    reject_unknown(n, {"seed", "level"}, "noise.");
    read_field(n, "seed", c.noise.seed, "noise.");
    read_field(n, "level", c.noise.level, "noise.");
  }
  if (doc.contains("regularization")) {
    const json& r = doc.at("regularization");
    reject_unknown(r, {"kind", "sigma_min"}, "regularization.");
    std::string kind = "truncation";
    read_field(r, "kind", kind, "regularization.");
    if (kind == "truncation") {
      c.regularization.kind = Regularization::Kind::truncation;
    } else if (kind == "spectral_cutoff") {
      c.regularization.kind = Regularization::Kind::spectral_cutoff;
    } else {
      throw ConfigError("config: regularization.kind must be 'truncation' or 'spectral_cutoff'");
    }
    read_field(r, "sigma_min", c.regularization.sigma_min, "regularization.");
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  const std::string text = io::read_text(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return from_json(doc);
}

std::string config_hash(const RunConfig& c) {
  const std::string canonical = to_json(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gxray::cli
