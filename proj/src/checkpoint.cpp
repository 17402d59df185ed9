#include "rgvfm/checkpoint.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rgvfm {

namespace {

std::string hexfloat(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

double parse_hexfloat(const std::string& tok) {
  const char* s = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || *end != '\0') {
    throw Error(ErrorCode::IoError, "bad numeric token in checkpoint: '" + tok + "'");
  }
  return v;
}

std::string expect_line(std::istream& in, const char* what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::IoError, std::string("checkpoint truncated, expected ") + what);
  }
  return line;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write checkpoint " + path.string());
  out << "rgvfm_checkpoint_v1\n";
  out << "variant " << variant_name(ckpt.variant) << "\n";
  out << "manifold " << manifold_type_name(ckpt.manifold.type) << " " << ckpt.manifold.dim << "\n";
  out << "seed " << ckpt.seed << "\n";
  char hashbuf[24];
  std::snprintf(hashbuf, sizeof(hashbuf), "%016llx",
                static_cast<unsigned long long>(ckpt.config_hash));
  out << "config_hash " << hashbuf << "\n";
  out << "layers " << ckpt.params.weights.size() << "\n";
  for (std::size_t l = 0; l < ckpt.params.weights.size(); ++l) {
    const Mat& w = ckpt.params.weights[l];
    const Vec& b = ckpt.params.biases[l];
    out << "layer " << l << " " << w.rows() << " " << w.cols() << "\n";
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      out << "w";
      for (Eigen::Index c = 0; c < w.cols(); ++c) out << " " << hexfloat(w(r, c));
      out << "\n";
    }
    out << "b";
    for (Eigen::Index r = 0; r < b.size(); ++r) out << " " << hexfloat(b[r]);
    out << "\n";
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for checkpoint " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open checkpoint " + path.string());

  if (expect_line(in, "magic") != "rgvfm_checkpoint_v1") {
    throw Error(ErrorCode::IoError, "not a checkpoint file: " + path.string());
  }

  Checkpoint ckpt;
  {
    std::istringstream ls(expect_line(in, "variant"));
    std::string key, name;
    ls >> key >> name;
    auto v = variant_from_name(name);
    if (key != "variant" || !v) throw Error(ErrorCode::IoError, "bad variant line");
    ckpt.variant = *v;
  }
  {
    std::istringstream ls(expect_line(in, "manifold"));
    std::string key, type;
    int dim = 0;
    ls >> key >> type >> dim;
    if (key != "manifold" || !ls) throw Error(ErrorCode::IoError, "bad manifold line");
    if (type == "euclidean") ckpt.manifold = ManifoldKind::euclidean(dim);
    else if (type == "sphere") ckpt.manifold = ManifoldKind::sphere(dim);
    else if (type == "flat_torus") ckpt.manifold = ManifoldKind::flat_torus(dim);
    else throw Error(ErrorCode::IoError, "bad manifold type '" + type + "'");
  }
  {
    std::istringstream ls(expect_line(in, "seed"));
    std::string key;
    ls >> key >> ckpt.seed;
    if (key != "seed" || !ls) throw Error(ErrorCode::IoError, "bad seed line");
  }
  {
    std::istringstream ls(expect_line(in, "config_hash"));
    std::string key, hex;
    ls >> key >> hex;
    if (key != "config_hash" || hex.size() != 16) throw Error(ErrorCode::IoError, "bad config_hash line");
    ckpt.config_hash = std::stoull(hex, nullptr, 16);
  }
  std::size_t n_layers = 0;
  {
    std::istringstream ls(expect_line(in, "layers"));
    std::string key;
    ls >> key >> n_layers;
    if (key != "layers" || !ls) throw Error(ErrorCode::IoError, "bad layers line");
  }

  for (std::size_t l = 0; l < n_layers; ++l) {
    std::istringstream ls(expect_line(in, "layer header"));
    std::string key;
    std::size_t idx = 0;
    Eigen::Index rows = 0, cols = 0;
    ls >> key >> idx >> rows >> cols;
    if (key != "layer" || idx != l || rows < 1 || cols < 1) {
      throw Error(ErrorCode::IoError, "bad layer header for layer " + std::to_string(l));
    }
    Mat w(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      std::istringstream row(expect_line(in, "weight row"));
      std::string tag, tok;
      row >> tag;
      if (tag != "w") throw Error(ErrorCode::IoError, "expected weight row");
      for (Eigen::Index c = 0; c < cols; ++c) {
        if (!(row >> tok)) throw Error(ErrorCode::IoError, "short weight row");
        w(r, c) = parse_hexfloat(tok);
      }
    }
    Vec b(rows);
    {
      std::istringstream row(expect_line(in, "bias row"));
      std::string tag, tok;
      row >> tag;
      if (tag != "b") throw Error(ErrorCode::IoError, "expected bias row");
      for (Eigen::Index r = 0; r < rows; ++r) {
        if (!(row >> tok)) throw Error(ErrorCode::IoError, "short bias row");
        b[r] = parse_hexfloat(tok);
      }
    }
    ckpt.params.weights.push_back(std::move(w));
    ckpt.params.biases.push_back(std::move(b));
  }
  if (ckpt.params.weights.empty()) throw Error(ErrorCode::IoError, "checkpoint has no layers");
  return ckpt;
}

}  // namespace rgvfm
