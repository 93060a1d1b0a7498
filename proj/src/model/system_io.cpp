#include "poro/model/system_io.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>

#include "poro/error.hpp"
#include "poro/linalg/matrix_market.hpp"

namespace poro::model {

namespace fs = std::filesystem;
using namespace poro::linalg;

namespace {

void save_load(const fs::path& dir, std::ostream& manifest, const char* name, const Load& load) {
  manifest << name << "_terms " << load.terms().size() << '\n';
  for (std::size_t i = 0; i < load.terms().size(); ++i) {
    const auto& term = load.terms()[i];
    const std::string file = std::string(name) + "_" + std::to_string(i) + ".mtx";
    write_matrix_market_vector(dir / file, term.shape);
    manifest << name << "_term " << i << ' ' << term.profile.id() << ' ' << term.profile.a()
             << ' ' << term.profile.b() << ' ' << file << '\n';
  }
}

Load read_load(const fs::path& dir, const std::multimap<std::string, std::string>& kv,
               const char* name, std::size_t dim) {
  Load load(dim);
  auto [first, last] = kv.equal_range(std::string(name) + "_term");
  std::map<std::size_t, LoadTerm> ordered;
  for (auto it = first; it != last; ++it) {
    std::istringstream ss(it->second);
    std::size_t index = 0;
    std::string id, file;
    double a = 0.0, b = 0.0;
    if (!(ss >> index >> id >> a >> b >> file)) throw IoError("manifest: bad load term line");
    ordered.emplace(index, LoadTerm{read_matrix_market_vector(dir / file),
                                    TimeFunction::from_id(id, a, b)});
  }
  for (auto& [index, term] : ordered) load.add(std::move(term.shape), term.profile);
  return load;
}

}  // namespace

void save_system(const fs::path& dir, const PoroSystem& sys) {
  fs::create_directories(dir);
  write_matrix_market(dir / "A.mtx", sys.a);
  write_matrix_market(dir / "B.mtx", sys.b);
  write_matrix_market(dir / "C.mtx", sys.c);
  write_matrix_market(dir / "D.mtx", sys.d);
  write_matrix_market_vector(dir / "u0.mtx", sys.u0);
  write_matrix_market_vector(dir / "p0.mtx", sys.p0);

  std::ofstream manifest(dir / "manifest.txt");
  if (!manifest) throw IoError("cannot write " + (dir / "manifest.txt").string());
  manifest << std::setprecision(17);
  manifest << "poro-system 1\n";
  manifest << "n_u " << sys.n_u() << '\n' << "n_p " << sys.n_p() << '\n';
  if (sys.params) {
    const auto& p = *sys.params;
    manifest << "lambda " << p.lambda << '\n'
             << "mu " << p.mu << '\n'
             << "alpha " << p.alpha << '\n'
             << "biot_modulus " << p.biot_modulus << '\n'
             << "permeability " << p.permeability << '\n'
             << "viscosity " << p.viscosity << '\n';
  }
  save_load(dir, manifest, "f", sys.f);
  save_load(dir, manifest, "g", sys.g);
  if (!manifest) throw IoError("manifest: write failed");
}

PoroSystem load_system(const fs::path& dir) {
  std::ifstream in(dir / "manifest.txt");
  if (!in) throw IoError("cannot open " + (dir / "manifest.txt").string());
  std::multimap<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto space = line.find(' ');
    if (space == std::string::npos) throw IoError("manifest: malformed line '" + line + "'");
    kv.emplace(line.substr(0, space), line.substr(space + 1));
  }
  auto get = [&kv](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw IoError("manifest: missing key '" + key + "'");
    return it->second;
  };
  if (get("poro-system") != "1") throw IoError("manifest: unsupported version");

  PoroSystem sys;
  sys.a = read_matrix_market(dir / "A.mtx");
  sys.b = read_matrix_market(dir / "B.mtx");
  sys.c = read_matrix_market(dir / "C.mtx");
  sys.d = read_matrix_market(dir / "D.mtx");
  sys.u0 = read_matrix_market_vector(dir / "u0.mtx");
  sys.p0 = read_matrix_market_vector(dir / "p0.mtx");
  const std::size_t n_u = std::stoul(get("n_u"));
  const std::size_t n_p = std::stoul(get("n_p"));
  if (kv.count("lambda")) {
    MaterialParams p;
    p.lambda = std::stod(get("lambda"));
    p.mu = std::stod(get("mu"));
    p.alpha = std::stod(get("alpha"));
    p.biot_modulus = std::stod(get("biot_modulus"));
    p.permeability = std::stod(get("permeability"));
    p.viscosity = std::stod(get("viscosity"));
    sys.params = p;
  }
  sys.f = read_load(dir, kv, "f", n_u);
  sys.g = read_load(dir, kv, "g", n_p);
  sys.validate();
  return sys;
}

}  // namespace poro::model
