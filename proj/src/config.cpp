#include "wavecorr/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "wavecorr/io.hpp"

namespace wavecorr {

bool RunConfig::operator==(const RunConfig& other) const {
  return potential.kind == other.potential.kind && potential.params == other.potential.params &&
         spectral.box_half_length == other.spectral.box_half_length &&
         spectral.n_basis_per_parity == other.spectral.n_basis_per_parity &&
         spectral.quadrature_order == other.spectral.quadrature_order &&
         spectral.n_states == other.spectral.n_states &&
         packet.family == other.packet.family && packet.zeta == other.packet.zeta &&
         packet.alpha == other.packet.alpha && packet.d == other.packet.d &&
         packet.n_max == other.packet.n_max &&
         packet.explicit_coeffs == other.packet.explicit_coeffs &&
         classical == other.classical && bohmian == other.bohmian && grid == other.grid &&
         output == other.output;
}

GridSpec RunConfig::grid_spec() const {
  GridSpec g;
  if (grid.auto_extent) {
    const double ext = 0.95 * spectral.box_half_length;
    g.umin = -ext; g.umax = ext; g.vmin = -ext; g.vmax = ext;
  } else {
    g.umin = grid.umin; g.umax = grid.umax; g.vmin = grid.vmin; g.vmax = grid.vmax;
  }
  g.nu = grid.nu;
  g.nv = grid.nv;
  return g;
}

namespace {

struct RawDoc {
  // section -> key -> value, with insertion checks
  std::map<std::string, std::map<std::string, std::string>> sections;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

RawDoc tokenize(const std::string& text) {
  RawDoc doc;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw config_error("config line " + std::to_string(lineno) + ": malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty())
        throw config_error("config line " + std::to_string(lineno) + ": empty section name");
      doc.sections[section];  // allow empty sections
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw config_error("config line " + std::to_string(lineno) + ": key outside any section");
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    if (key.empty())
      throw config_error("config line " + std::to_string(lineno) + ": empty key");
    if (!doc.sections[section].emplace(key, val).second)
      throw config_error("config: duplicate key " + section + "." + key);
  }
  return doc;
}

double parse_real(const std::string& path, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw config_error("config: " + path + ": expected a real number, got '" + v + "'");
  }
}

int parse_int(const std::string& path, const std::string& v) {
  try {
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return x;
  } catch (...) {
    throw config_error("config: " + path + ": expected an integer, got '" + v + "'");
  }
}

std::vector<double> parse_real_list(const std::string& path, const std::string& v) {
  std::vector<double> out;
  std::istringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) throw config_error("config: " + path + ": empty list element");
    out.push_back(parse_real(path, t));
  }
  if (out.empty()) throw config_error("config: " + path + ": empty list");
  return out;
}

// a key/value section view that tracks consumption so unknown keys can be
// rejected with their full path
class Section {
 public:
  Section(const RawDoc& doc, const std::string& name) : name_(name) {
    const auto it = doc.sections.find(name);
    if (it != doc.sections.end()) kv_ = &it->second;
  }
  bool present() const { return kv_ != nullptr; }
  bool has(const std::string& key) const { return kv_ && kv_->count(key); }
  const std::string* get(const std::string& key) {
    if (!kv_) return nullptr;
    const auto it = kv_->find(key);
    if (it == kv_->end()) return nullptr;
    used_.insert(key);
    return &it->second;
  }
  std::string path(const std::string& key) const { return name_ + "." + key; }
  void finish() const {
    if (!kv_) return;
    for (const auto& [k, v] : *kv_)
      if (!used_.count(k))
        throw config_error("config: unknown key '" + k + "' in section [" + name_ + "]");
  }

 private:
  std::string name_;
  const std::map<std::string, std::string>* kv_ = nullptr;
  std::set<std::string> used_;
};

}  // namespace

RunConfig parse_config(const std::string& text) {
  const RawDoc doc = tokenize(text);
  static const std::set<std::string> known_sections = {
      "potential", "spectral", "packet", "classical", "bohmian", "grid", "output"};
  for (const auto& [name, kv] : doc.sections)
    if (!known_sections.count(name))
      throw config_error("config: unknown section [" + name + "]");

  RunConfig cfg;

  // [potential]
  {
    Section sec(doc, "potential");
    if (!sec.present()) throw config_error("config: missing required section [potential]");
    const std::string* kind = sec.get("kind");
    if (!kind) throw config_error("config: missing required key potential.kind");
    cfg.potential.kind = potential_kind_from_string(*kind);
    if (cfg.potential.is_square_well()) {
      const std::string* L = sec.get("L");
      if (!L) throw config_error("config: square_well requires potential.L");
      cfg.potential.params["L"] = parse_real(sec.path("L"), *L);
      if (!(cfg.potential.params["L"] > 0))
        throw config_error("config: potential.L must be positive");
    }
    sec.finish();
  }

  // [spectral]
  {
    Section sec(doc, "spectral");
    cfg.spectral = default_spectral_config(cfg.potential);
    if (const auto* v = sec.get("box_half_length"))
      cfg.spectral.box_half_length = parse_real(sec.path("box_half_length"), *v);
    if (const auto* v = sec.get("n_basis_per_parity"))
      cfg.spectral.n_basis_per_parity = parse_int(sec.path("n_basis_per_parity"), *v);
    if (const auto* v = sec.get("quadrature_order"))
      cfg.spectral.quadrature_order = parse_int(sec.path("quadrature_order"), *v);
    if (const auto* v = sec.get("n_states"))
      cfg.spectral.n_states = parse_int(sec.path("n_states"), *v);
    sec.finish();
    if (cfg.potential.is_square_well()) {
      const double half = 0.5 * cfg.potential.params["L"];
      if (std::abs(cfg.spectral.box_half_length - half) > 1e-12 * half)
        throw config_error("config: spectral.box_half_length must equal L/2 for square_well");
    }
    if (cfg.spectral.n_states < 1 || cfg.spectral.n_states > cfg.spectral.n_basis_per_parity)
      throw config_error("config: need 1 <= spectral.n_states <= spectral.n_basis_per_parity");
  }

  // [packet]
  {
    Section sec(doc, "packet");
    if (!sec.present() || !sec.has("family")) {
      std::string missing = "family";
      if (!sec.present()) missing = "family (section absent)";
      throw config_error("config: missing required key(s) in [packet]: " + missing);
    }
    cfg.packet.family = coefficient_family_from_string(*sec.get("family"));
    if (const auto* v = sec.get("zeta")) cfg.packet.zeta = parse_real(sec.path("zeta"), *v);
    if (const auto* v = sec.get("alpha")) cfg.packet.alpha = parse_real(sec.path("alpha"), *v);
    if (const auto* v = sec.get("d")) cfg.packet.d = parse_real(sec.path("d"), *v);
    if (const auto* v = sec.get("n_max")) cfg.packet.n_max = parse_int(sec.path("n_max"), *v);
    if (const auto* v = sec.get("coefficients"))
      cfg.packet.explicit_coeffs = parse_real_list(sec.path("coefficients"), *v);
    sec.finish();

    std::vector<std::string> missing;
    const bool coh = cfg.packet.family == CoefficientFamily::coherent ||
                     cfg.packet.family == CoefficientFamily::n_weighted_coherent;
    if (coh && !sec.has("zeta")) missing.push_back("zeta");
    if (cfg.packet.family == CoefficientFamily::gaussian_projection) {
      if (!sec.has("alpha")) missing.push_back("alpha");
      if (!sec.has("d")) missing.push_back("d");
    }
    if (cfg.packet.family == CoefficientFamily::explicit_list && !sec.has("coefficients"))
      missing.push_back("coefficients");
    if (!missing.empty()) {
      std::string list;
      for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
      throw config_error("config: missing required key(s) in [packet]: " + list);
    }
    // keys that do not belong to the chosen family are mistakes, not noise
    const auto reject = [&](bool given, const char* key) {
      if (given)
        throw config_error("config: packet." + std::string(key) +
                           " does not apply to family " + to_string(cfg.packet.family));
    };
    if (coh) {
      reject(sec.has("alpha"), "alpha");
      reject(sec.has("d"), "d");
      reject(sec.has("coefficients"), "coefficients");
    } else if (cfg.packet.family == CoefficientFamily::gaussian_projection) {
      reject(sec.has("zeta"), "zeta");
      reject(sec.has("coefficients"), "coefficients");
    } else {
      reject(sec.has("zeta"), "zeta");
      reject(sec.has("alpha"), "alpha");
      reject(sec.has("d"), "d");
    }
    if (cfg.packet.family == CoefficientFamily::gaussian_projection && !(cfg.packet.alpha > 0))
      throw config_error("config: packet.alpha must be positive");
    if (cfg.packet.n_max < 1 || cfg.packet.n_max > cfg.spectral.n_states)
      throw config_error("config: need 1 <= packet.n_max <= spectral.n_states");
  }

  // [classical]
  {
    Section sec(doc, "classical");
    std::string mode = "auto_from_ridge";
    if (const auto* v = sec.get("mode")) mode = *v;
    if (mode == "auto_from_ridge") {
      cfg.classical.auto_from_ridge = true;
    } else if (mode == "explicit") {
      cfg.classical.auto_from_ridge = false;
    } else {
      throw config_error("config: classical.mode must be auto_from_ridge or explicit");
    }
    if (const auto* v = sec.get("u0")) cfg.classical.u0 = parse_real(sec.path("u0"), *v);
    if (const auto* v = sec.get("vdot0")) {
      cfg.classical.vdot0 = parse_real(sec.path("vdot0"), *v);
      cfg.classical.vdot0_given = true;
    }
    if (const auto* v = sec.get("t_end")) {
      if (*v == "auto") {
        cfg.classical.auto_t_end = true;
      } else {
        cfg.classical.auto_t_end = false;
        cfg.classical.t_end = parse_real(sec.path("t_end"), *v);
      }
    }
    if (const auto* v = sec.get("n_periods"))
      cfg.classical.n_periods = parse_real(sec.path("n_periods"), *v);
    if (const auto* v = sec.get("h")) cfg.classical.h = parse_real(sec.path("h"), *v);
    sec.finish();
    if (!cfg.classical.auto_from_ridge && !sec.has("u0"))
      throw config_error("config: classical.mode = explicit requires classical.u0");
    if (cfg.classical.auto_from_ridge && (sec.has("u0") || sec.has("vdot0")))
      throw config_error("config: classical ICs cannot be given in auto_from_ridge mode");
    if (!(cfg.classical.h > 0)) throw config_error("config: classical.h must be positive");
    if (!cfg.classical.auto_t_end && !(cfg.classical.t_end > 0))
      throw config_error("config: classical.t_end must be positive");
    if (!(cfg.classical.n_periods > 0))
      throw config_error("config: classical.n_periods must be positive");
    if (cfg.potential.is_square_well() && cfg.classical.auto_from_ridge)
      throw config_error("config: square_well needs explicit classical ICs "
                         "(the zero-velocity ridge start is degenerate there)");
  }

  // [bohmian]
  {
    Section sec(doc, "bohmian");
    if (const auto* v = sec.get("kappa")) cfg.bohmian.kappa = parse_real(sec.path("kappa"), *v);
    if (const auto* v = sec.get("node_epsilon"))
      cfg.bohmian.node_epsilon = parse_real(sec.path("node_epsilon"), *v);
    if (const auto* v = sec.get("starts")) {
      if (*v == "auto") {
        cfg.bohmian.auto_start = true;
      } else {
        cfg.bohmian.auto_start = false;
        std::istringstream in(*v);
        std::string pair;
        while (std::getline(in, pair, ';')) {
          const auto xs = parse_real_list(sec.path("starts"), trim(pair));
          if (xs.size() != 2)
            throw config_error("config: bohmian.starts entries must be 'u,v' pairs");
          cfg.bohmian.starts.push_back({xs[0], xs[1]});
        }
        if (cfg.bohmian.starts.empty())
          throw config_error("config: bohmian.starts is empty");
      }
    }
    if (const auto* v = sec.get("t_end")) {
      if (*v == "auto") {
        cfg.bohmian.auto_t_end = true;
      } else {
        cfg.bohmian.auto_t_end = false;
        cfg.bohmian.t_end = parse_real(sec.path("t_end"), *v);
      }
    }
    if (const auto* v = sec.get("h")) cfg.bohmian.h = parse_real(sec.path("h"), *v);
    sec.finish();
    if (cfg.bohmian.kappa == 0) throw config_error("config: bohmian.kappa must be nonzero");
    if (!(cfg.bohmian.node_epsilon > 0))
      throw config_error("config: bohmian.node_epsilon must be positive");
    if (!(cfg.bohmian.h > 0)) throw config_error("config: bohmian.h must be positive");
    if (!cfg.bohmian.auto_t_end && !(cfg.bohmian.t_end > 0))
      throw config_error("config: bohmian.t_end must be positive");
  }

  // [grid]
  {
    Section sec(doc, "grid");
    const bool any_extent = sec.has("umin") || sec.has("umax") || sec.has("vmin") || sec.has("vmax");
    if (any_extent) {
      cfg.grid.auto_extent = false;
      const auto need = [&](const char* k) -> double {
        const auto* v = sec.get(k);
        if (!v) throw config_error("config: grid extent needs all of umin,umax,vmin,vmax");
        return parse_real(sec.path(k), *v);
      };
      cfg.grid.umin = need("umin");
      cfg.grid.umax = need("umax");
      cfg.grid.vmin = need("vmin");
      cfg.grid.vmax = need("vmax");
    }
    if (const auto* v = sec.get("nu")) cfg.grid.nu = parse_int(sec.path("nu"), *v);
    if (const auto* v = sec.get("nv")) cfg.grid.nv = parse_int(sec.path("nv"), *v);
    if (const auto* v = sec.get("crest_window"))
      cfg.grid.crest_window = parse_real(sec.path("crest_window"), *v);
    sec.finish();
    if (cfg.grid.nu < 2 || cfg.grid.nv < 2)
      throw config_error("config: grid.nu and grid.nv must be >= 2");
    if (!(cfg.grid.crest_window > 0))
      throw config_error("config: grid.crest_window must be positive");
    const GridSpec g = cfg.grid_spec();
    g.validate();
    const double a = cfg.spectral.box_half_length;
    if (g.umin < -a || g.umax > a || g.vmin < -a || g.vmax > a)
      throw config_error("config: grid extent must lie inside the spectral box");
  }

  // [output]
  {
    Section sec(doc, "output");
    if (const auto* v = sec.get("directory")) cfg.output.directory = *v;
    if (const auto* v = sec.get("format_version")) cfg.output.format_version = *v;
    sec.finish();
    if (cfg.output.directory.empty())
      throw config_error("config: output.directory must not be empty");
    if (cfg.output.format_version != "wavecorr-v1")
      throw config_error("config: unsupported output.format_version '" +
                         cfg.output.format_version + "'");
  }

  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string echo_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[potential]\n";
  out << "kind = " << to_string(cfg.potential.kind) << "\n";
  if (cfg.potential.is_square_well())
    out << "L = " << fmt17(cfg.potential.params.at("L")) << "\n";

  out << "\n[spectral]\n";
  out << "box_half_length = " << fmt17(cfg.spectral.box_half_length) << "\n";
  out << "n_basis_per_parity = " << cfg.spectral.n_basis_per_parity << "\n";
  out << "quadrature_order = " << cfg.spectral.quadrature_order << "\n";
  out << "n_states = " << cfg.spectral.n_states << "\n";

  out << "\n[packet]\n";
  out << "family = " << to_string(cfg.packet.family) << "\n";
  const bool coh = cfg.packet.family == CoefficientFamily::coherent ||
                   cfg.packet.family == CoefficientFamily::n_weighted_coherent;
  if (coh) out << "zeta = " << fmt17(cfg.packet.zeta) << "\n";
  if (cfg.packet.family == CoefficientFamily::gaussian_projection) {
    out << "alpha = " << fmt17(cfg.packet.alpha) << "\n";
    out << "d = " << fmt17(cfg.packet.d) << "\n";
  }
  out << "n_max = " << cfg.packet.n_max << "\n";
  if (cfg.packet.family == CoefficientFamily::explicit_list) {
    out << "coefficients = ";
    for (size_t i = 0; i < cfg.packet.explicit_coeffs.size(); ++i)
      out << (i ? "," : "") << fmt17(cfg.packet.explicit_coeffs[i]);
    out << "\n";
  }

  out << "\n[classical]\n";
  out << "mode = " << (cfg.classical.auto_from_ridge ? "auto_from_ridge" : "explicit") << "\n";
  if (!cfg.classical.auto_from_ridge) {
    out << "u0 = " << fmt17(cfg.classical.u0) << "\n";
    if (cfg.classical.vdot0_given) out << "vdot0 = " << fmt17(cfg.classical.vdot0) << "\n";
  }
  if (cfg.classical.auto_t_end) out << "t_end = auto\n";
  else out << "t_end = " << fmt17(cfg.classical.t_end) << "\n";
  out << "n_periods = " << fmt17(cfg.classical.n_periods) << "\n";
  out << "h = " << fmt17(cfg.classical.h) << "\n";

  out << "\n[bohmian]\n";
  out << "kappa = " << fmt17(cfg.bohmian.kappa) << "\n";
  out << "node_epsilon = " << fmt17(cfg.bohmian.node_epsilon) << "\n";
  if (cfg.bohmian.auto_start) {
    out << "starts = auto\n";
  } else {
    out << "starts = ";
    for (size_t i = 0; i < cfg.bohmian.starts.size(); ++i)
      out << (i ? "; " : "") << fmt17(cfg.bohmian.starts[i][0]) << ","
          << fmt17(cfg.bohmian.starts[i][1]);
    out << "\n";
  }
  if (cfg.bohmian.auto_t_end) out << "t_end = auto\n";
  else out << "t_end = " << fmt17(cfg.bohmian.t_end) << "\n";
  out << "h = " << fmt17(cfg.bohmian.h) << "\n";

  out << "\n[grid]\n";
  if (!cfg.grid.auto_extent) {
    out << "umin = " << fmt17(cfg.grid.umin) << "\n";
    out << "umax = " << fmt17(cfg.grid.umax) << "\n";
    out << "vmin = " << fmt17(cfg.grid.vmin) << "\n";
    out << "vmax = " << fmt17(cfg.grid.vmax) << "\n";
  }
  out << "nu = " << cfg.grid.nu << "\n";
  out << "nv = " << cfg.grid.nv << "\n";
  out << "crest_window = " << fmt17(cfg.grid.crest_window) << "\n";

  out << "\n[output]\n";
  out << "directory = " << cfg.output.directory << "\n";
  out << "format_version = " << cfg.output.format_version << "\n";
  return out.str();
}

}  // namespace wavecorr
