#include "rgvfm/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace rgvfm {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidConfig, "key '" + key + "' expects an integer, got '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    std::uint64_t x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidConfig,
                "key '" + key + "' expects an unsigned integer, got '" + v + "'");
  }
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidConfig, "key '" + key + "' expects a number, got '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw Error(ErrorCode::InvalidConfig, "key '" + key + "' expects true/false, got '" + v + "'");
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "variant") {
    auto v = variant_from_name(value);
    if (!v) throw Error(ErrorCode::InvalidConfig, "unknown variant '" + value + "'");
    cfg.variant = *v;
  } else if (key == "manifold") {
    if (value == "euclidean") cfg.manifold.type = ManifoldType::Euclidean;
    else if (value == "sphere") cfg.manifold.type = ManifoldType::Sphere;
    else if (value == "flat_torus") cfg.manifold.type = ManifoldType::FlatTorus;
    else throw Error(ErrorCode::InvalidConfig, "unknown manifold '" + value + "'");
  } else if (key == "manifold_dim") {
    cfg.manifold.dim = static_cast<int>(parse_long(key, value));
  } else if (key == "grid_azimuth") {
    cfg.grid.n_azimuth = static_cast<int>(parse_long(key, value));
  } else if (key == "grid_z") {
    cfg.grid.n_z = static_cast<int>(parse_long(key, value));
  } else if (key == "grid_parity") {
    if (value == "even") cfg.grid.parity = Parity::Even;
    else if (value == "odd") cfg.grid.parity = Parity::Odd;
    else throw Error(ErrorCode::InvalidConfig, "grid_parity expects even/odd, got '" + value + "'");
  } else if (key == "hidden_dim") {
    cfg.hidden_dim = static_cast<int>(parse_long(key, value));
  } else if (key == "epochs") {
    cfg.epochs = static_cast<int>(parse_long(key, value));
  } else if (key == "batch_size") {
    cfg.batch_size = static_cast<int>(parse_long(key, value));
  } else if (key == "train_samples_per_epoch") {
    cfg.train_samples_per_epoch = static_cast<int>(parse_long(key, value));
  } else if (key == "learning_rate") {
    cfg.learning_rate = parse_double(key, value);
  } else if (key == "sigma") {
    cfg.sigma = parse_double(key, value);
  } else if (key == "integrator_steps") {
    cfg.integrator.steps = static_cast<int>(parse_long(key, value));
  } else if (key == "integrator_t_end") {
    cfg.integrator.t_end = parse_double(key, value);
  } else if (key == "retract") {
    if (value == "auto") cfg.retract = Retract::Auto;
    else if (value == "on") cfg.retract = Retract::On;
    else if (value == "off") cfg.retract = Retract::Off;
    else throw Error(ErrorCode::InvalidConfig, "retract expects auto/on/off, got '" + value + "'");
  } else if (key == "record_trajectory") {
    cfg.integrator.record_trajectory = parse_bool(key, value);
  } else if (key == "n_samples") {
    cfg.n_samples = static_cast<int>(parse_long(key, value));
  } else if (key == "seed") {
    cfg.seed = parse_u64(key, value);
  } else if (key == "output_dir") {
    cfg.output_dir = value;
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown config key '" + key + "'");
  }
}

}  // namespace

IntegratorConfig resolved_integrator(const RunConfig& cfg) {
  IntegratorConfig out = cfg.integrator;
  switch (cfg.retract) {
    case Retract::Auto: out.retract_each_step = variant_integrates_on_manifold(cfg.variant); break;
    case Retract::On: out.retract_each_step = true; break;
    case Retract::Off: out.retract_each_step = false; break;
  }
  return out;
}

void validate_config(const RunConfig& cfg) {
  if (cfg.hidden_dim < 1) throw Error(ErrorCode::InvalidConfig, "hidden_dim must be >= 1");
  if (cfg.epochs < 1) throw Error(ErrorCode::InvalidConfig, "epochs must be >= 1");
  if (cfg.batch_size < 1) throw Error(ErrorCode::InvalidConfig, "batch_size must be >= 1");
  if (cfg.train_samples_per_epoch < 1) {
    throw Error(ErrorCode::InvalidConfig, "train_samples_per_epoch must be >= 1");
  }
  if (!(cfg.learning_rate > 0.0)) throw Error(ErrorCode::InvalidConfig, "learning_rate must be positive");
  if (!(cfg.sigma > 0.0)) throw Error(ErrorCode::InvalidConfig, "sigma must be positive");
  if (cfg.n_samples < 1) throw Error(ErrorCode::InvalidConfig, "n_samples must be >= 1");
  if (cfg.output_dir.empty()) throw Error(ErrorCode::InvalidConfig, "output_dir must be set");
  validate_grid(cfg.grid);
  validate_integrator(cfg.integrator);
  switch (cfg.manifold.type) {
    case ManifoldType::Euclidean:
      if (cfg.manifold.dim < 1) throw Error(ErrorCode::InvalidConfig, "manifold_dim must be >= 1");
      break;
    case ManifoldType::Sphere:
      if (cfg.manifold.dim < 2) throw Error(ErrorCode::InvalidConfig, "sphere manifold_dim must be >= 2");
      break;
    case ManifoldType::FlatTorus:
      if (cfg.manifold.dim < 1) throw Error(ErrorCode::InvalidConfig, "manifold_dim must be >= 1");
      break;
  }
  if ((variant_uses_geodesic_path(cfg.variant) || cfg.variant == Variant::RG_VFM_R3) &&
      cfg.manifold.type == ManifoldType::Euclidean) {
    throw Error(ErrorCode::InvalidConfig,
                std::string(variant_name(cfg.variant)) + " needs a curved or periodic manifold");
  }
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::map<std::string, bool> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidConfig,
                  "line " + std::to_string(lineno) + " is not 'key = value': " + s);
    }
    std::string key = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(lineno) + " has an empty key or value");
    }
    if (seen[key]) throw Error(ErrorCode::InvalidConfig, "duplicate config key '" + key + "'");
    seen[key] = true;
    apply_key(cfg, key, value);
  }
  return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "variant = " << variant_name(cfg.variant) << "\n";
  os << "manifold = " << manifold_type_name(cfg.manifold.type) << "\n";
  os << "manifold_dim = " << cfg.manifold.dim << "\n";
  os << "grid_azimuth = " << cfg.grid.n_azimuth << "\n";
  os << "grid_z = " << cfg.grid.n_z << "\n";
  os << "grid_parity = " << (cfg.grid.parity == Parity::Even ? "even" : "odd") << "\n";
  os << "hidden_dim = " << cfg.hidden_dim << "\n";
  os << "epochs = " << cfg.epochs << "\n";
  os << "batch_size = " << cfg.batch_size << "\n";
  os << "train_samples_per_epoch = " << cfg.train_samples_per_epoch << "\n";
  os << "learning_rate = " << fmt_double(cfg.learning_rate) << "\n";
  os << "sigma = " << fmt_double(cfg.sigma) << "\n";
  os << "integrator_steps = " << cfg.integrator.steps << "\n";
  os << "integrator_t_end = " << fmt_double(cfg.integrator.t_end) << "\n";
  os << "retract = "
     << (cfg.retract == Retract::Auto ? "auto" : (cfg.retract == Retract::On ? "on" : "off"))
     << "\n";
  os << "record_trajectory = " << (cfg.integrator.record_trajectory ? "true" : "false") << "\n";
  os << "n_samples = " << cfg.n_samples << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "output_dir = " << cfg.output_dir << "\n";
  return os.str();
}

std::uint64_t config_hash(const RunConfig& cfg) {
  std::string text = serialize_config(cfg);
  // strip the output_dir line (always last)
  auto pos = text.rfind("output_dir = ");
  if (pos != std::string::npos) text.resize(pos);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace rgvfm
