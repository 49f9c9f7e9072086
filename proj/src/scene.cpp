#include "photonkit/scene.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include "photonkit/version.hpp"

namespace photonkit {

using nlohmann::json;
using nlohmann::ordered_json;

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

namespace {

Complex parse_complex(const json& j, const char* what) {
  if (j.is_number()) return Complex{j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return Complex{j[0].get<double>(), j[1].get<double>()};
  throw SceneError(std::string("scene: expected number or [re,im] for ") + what);
}

Vec3 parse_vec3(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw SceneError(std::string("scene: expected [x,y,z] for ") + what);
  return Vec3{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Vec4 parse_vec4(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 4)
    throw SceneError(std::string("scene: expected [q0,q1,q2,q3] for ") + what);
  return Vec4{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

ScalarGaussianSum parse_profile(const json& j, const char* what) {
  ScalarGaussianSum out;
  if (!j.is_array()) throw SceneError(std::string("scene: expected an array of bumps for ") + what);
  for (const auto& term : j) {
    ScalarGaussianSum::Term t;
    t.amp = parse_complex(term.at("amp"), "profile amp");
    t.center = parse_vec3(term.at("center"), "profile center");
    t.sigma = term.at("sigma").get<double>();
    if (!(t.sigma > 0.0)) throw SceneError("scene: profile sigma must be positive");
    out.terms.push_back(t);
  }
  return out;
}

FieldEvaluator parse_field(const json& j, double& sigma_min);

FieldEvaluator parse_packet(const json& j, double& sigma_min) {
  const auto& eps_j = j.at("eps");
  if (!eps_j.is_array() || eps_j.size() != 3) throw SceneError("scene: packet eps must have 3 entries");
  Vec3c eps;
  for (int i = 0; i < 3; ++i) eps(i) = parse_complex(eps_j[i], "packet eps");
  const Vec3 center = parse_vec3(j.at("center"), "packet center");
  const double sigma = j.at("sigma").get<double>();
  if (!(sigma > 0.0)) throw SceneError("scene: packet sigma must be positive");
  sigma_min = std::min(sigma_min, sigma);
  const Complex amp = j.contains("amp") ? parse_complex(j.at("amp"), "packet amp") : Complex{1.0, 0.0};
  return FieldEvaluator::gaussian_packet(eps, center, sigma, amp);
}

FieldEvaluator parse_field(const json& j, double& sigma_min) {
  if (j.is_null()) return FieldEvaluator::zero();
  if (!j.is_object() || !j.contains("type")) throw SceneError("scene: field must be an object with a type");
  const std::string type = j.at("type").get<std::string>();
  if (type == "zero") return FieldEvaluator::zero();
  if (type == "packet") return parse_packet(j, sigma_min);
  if (type == "sum") {
    std::vector<std::pair<Complex, FieldEvaluator>> terms;
    for (const auto& t : j.at("terms")) {
      if (!t.is_array() || t.size() != 2) throw SceneError("scene: sum terms must be [coeff, field]");
      terms.emplace_back(parse_complex(t[0], "sum coefficient"), parse_field(t[1], sigma_min));
    }
    return FieldEvaluator::linear_combination(std::move(terms));
  }
  if (type == "longitudinal") return FieldEvaluator::longitudinal(parse_profile(j.at("profile"), "profile"));
  if (type == "raw4") {
    // failure-injection fixture: four raw components, no constraint completion
    const auto& comps = j.at("components");
    if (!comps.is_array() || comps.size() != 4) throw SceneError("scene: raw4 needs 4 component arrays");
    std::array<ScalarGaussianSum, 4> parsed;
    for (int mu = 0; mu < 4; ++mu) parsed[mu] = parse_profile(comps[mu], "raw4 component");
    return FieldEvaluator::raw_components(parsed);
  }
  throw SceneError("scene: unknown field type '" + type + "'");
}

TestFunction4D parse_testfunction(const json& j) {
  if (!j.is_object() || !j.contains("components"))
    throw SceneError("scene: test function must carry 4 component arrays");
  const auto& comps = j.at("components");
  if (!comps.is_array() || comps.size() != 4)
    throw SceneError("scene: test function needs exactly 4 components");
  TestFunction4D f;
  for (int mu = 0; mu < 4; ++mu) {
    for (const auto& term : comps[mu]) {
      if (term.contains("type") && term.at("type").get<std::string>() != "gaussian4d")
        throw SceneError("scene: unknown test-function term type");
      TestFunction4D::Term t;
      t.amp = term.at("amp").get<double>();
      t.center = parse_vec4(term.at("center"), "gaussian4d center");
      t.tau = term.at("tau").get<double>();
      if (!(t.tau > 0.0)) throw SceneError("scene: gaussian4d tau must be positive");
      t.momentum = term.contains("momentum") ? parse_vec4(term.at("momentum"), "gaussian4d momentum")
                                             : Vec4::Zero().eval();
      const std::string phase = term.contains("phase") ? term.at("phase").get<std::string>() : "cos";
      if (phase == "cos")
        t.trig = TestFunction4D::Trig::Cos;
      else if (phase == "sin")
        t.trig = TestFunction4D::Trig::Sin;
      else
        throw SceneError("scene: gaussian4d phase must be 'cos' or 'sin'");
      f.components[mu].push_back(t);
    }
  }
  return f;
}

}  // namespace

CorrelationKernel Scene::kernel() const {
  CorrelationKernel k;
  k.eta = eta;
  k.grid = build();
  k.tol = Tolerances{}.scaled(tol_scale);
  return k;
}

const FieldEvaluator& Scene::field(const std::string& name) const {
  const auto it = fields.find(name);
  if (it == fields.end()) throw SceneError("scene: unresolved field name '" + name + "'");
  return it->second;
}

const WeylLabel& Scene::label(const std::string& name) const {
  const auto it = labels.find(name);
  if (it == labels.end()) throw SceneError("scene: unresolved label name '" + name + "'");
  return it->second;
}

Scene parse_scene(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw SceneError(std::string("scene: invalid JSON: ") + e.what());
  }
  Scene scene;
  scene.sha256 = sha256_hex(j.dump());
  try {
    if (j.contains("version")) scene.version = j.at("version").get<int>();
    if (!j.contains("seed")) throw SceneError("scene: a seed is required for reproducible reports");
    scene.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("eta")) {
      scene.eta = j.at("eta").get<double>();
      if (!(scene.eta > 0.0)) throw SceneError("scene: eta must be positive");
    }
    if (j.contains("tol_scale")) scene.tol_scale = j.at("tol_scale").get<double>();
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      if (g.contains("kmin")) scene.grid.k_min = g.at("kmin").get<double>();
      if (g.contains("kmax")) scene.grid.k_max = g.at("kmax").get<double>();
      if (g.contains("resolution")) {
        const auto& r = g.at("resolution");
        if (!r.is_array() || r.size() != 3) throw SceneError("scene: grid resolution must be [nr,nt,np]");
        for (int i = 0; i < 3; ++i) scene.grid.resolution[i] = r[i].get<int>();
      }
    }
    if (j.contains("fields"))
      for (const auto& [name, spec] : j.at("fields").items())
        scene.fields.emplace(name, parse_field(spec, scene.sigma_min));
    if (j.contains("testfunctions"))
      for (const auto& [name, spec] : j.at("testfunctions").items())
        scene.testfunctions.emplace(name, parse_testfunction(spec));
    if (j.contains("labels")) {
      for (const auto& [name, spec] : j.at("labels").items()) {
        auto resolve = [&](const char* key) -> FieldEvaluator {
          if (!spec.contains(key) || spec.at(key).is_null()) return FieldEvaluator::zero();
          const auto& v = spec.at(key);
          if (v.is_string()) return scene.field(v.get<std::string>());
          return parse_field(v, scene.sigma_min);
        };
        scene.labels.emplace(name, WeylLabel{resolve("a"), resolve("psi")});
      }
    }
    if (j.contains("checks")) {
      scene.checks.clear();
      for (const auto& c : j.at("checks")) scene.checks.push_back(c.get<std::string>());
    }
  } catch (const json::exception& e) {
    throw SceneError(std::string("scene: ") + e.what());
  }

  // Support warnings: built-in fields must be negligible at the shell cuts.
  const MomentumGrid probe = build_grid(scene.grid.k_min, scene.grid.k_max, {8, 6, 8});
  for (const auto& [name, f] : scene.fields) {
    if (f.is_zero()) continue;
    const double peak = f.sup_abs(probe);
    if (peak <= 0.0) continue;
    double edge = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double phi = 2.0 * M_PI * i / 8.0;
      for (const double c : {-0.9, 0.0, 0.9}) {
        const double s = std::sqrt(1.0 - c * c);
        const Vec3 dir{s * std::cos(phi), s * std::sin(phi), c};
        edge = std::max(edge, f.eval(scene.grid.k_min * dir).norm());
        edge = std::max(edge, f.eval(scene.grid.k_max * dir).norm());
      }
    }
    if (edge > 1e-12 * peak)
      scene.warnings.push_back("field '" + name + "' is not negligible at the grid shell boundary");
  }
  return scene;
}

Scene load_scene_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SceneError("scene: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str());
}

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

ordered_json Report::to_json() const {
  ordered_json out;
  out["artifact"] = {{"name", "photonkit"}, {"version", kVersion}};
  out["suite"] = suite;
  out["scene_sha256"] = scene_sha256;
  out["seed"] = seed;
  out["eta"] = eta;
  out["grid"] = {{"kmin", grid.k_min}, {"kmax", grid.k_max}, {"resolution", grid.resolution}};
  ordered_json checks_json = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["values"] = c.values;
    cj["residual"] = c.residual;
    cj["tolerance"] = c.tolerance;
    cj["pass"] = c.pass;
    checks_json.push_back(cj);
  }
  out["checks"] = checks_json;
  out["pass"] = pass();
  return out;
}

}  // namespace photonkit
