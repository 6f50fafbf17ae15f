/*
 * Copyright 2026 the isopoly authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "isopoly/identities.hpp"
#include "isopoly/nets.hpp"
#include "isopoly/textio.hpp"

using json = nlohmann::json;
using namespace isopoly;

namespace {

struct CommonOpts {
  std::string curve = "E/Q(i):[0,-1,0]";
  std::string field;
  std::string g1, g2, g3;
  bool json_out = false;
  bool pretty = false;
  long precision = 16;
  bool extension_ok = false;
  std::uint64_t seed = 1;
};

PsiEngine make_engine(const WeierstrassCurve& E, const CommonOpts& o) {
  GChoices g = PsiEngine::default_gchoices(E);
  auto override_slot = [&](const std::string& lit, int slot) {
    if (lit.empty()) return;
    HomElement h = parse_isogeny_literal(E, lit);
    g.g[static_cast<std::size_t>(slot)] = h.to_isogeny(E);
  };
  override_slot(o.g1, 0);
  override_slot(o.g2, 1);
  override_slot(o.g3, 2);
  return PsiEngine(E, g, convention_solve(E, g));
}

void emit(const IdentityReport& r, const CommonOpts& o, bool& any_unequal) {
  if (!r.equal) any_unequal = true;
  if (o.json_out) {
    json j;
    j["name"] = r.name;
    j["inputs"] = r.inputs;
    j["equal"] = r.equal;
    j["field"] = r.field;
    j["lhs"] = crf_str(r.lhs);
    j["rhs"] = crf_str(r.rhs);
    std::cout << j.dump() << "\n";
  } else if (o.pretty) {
    std::cout << r.name << " " << (r.equal ? "OK" : "MISMATCH") << "  [";
    for (std::size_t i = 0; i < r.inputs.size(); ++i)
      std::cout << (i ? ", " : "") << r.inputs[i];
    std::cout << "]\n  lhs = " << crf_str(r.lhs) << "\n  rhs = " << crf_str(r.rhs) << "\n";
  } else {
    std::cout << r.name << "\t" << (r.equal ? "equal" : "UNEQUAL") << "\t" << crf_str(r.lhs)
              << "\n";
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t k = 0; k <= s.size(); ++k) {
    if (k == s.size() || (s[k] == ',' && depth == 0)) {
      out.push_back(s.substr(start, k - start));
      start = k + 1;
    } else if (s[k] == '(') {
      ++depth;
    } else if (s[k] == ')') {
      --depth;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact division polynomials, kernel functions, and elliptic nets"};
  app.require_subcommand(1);
  app.fallthrough();
  CommonOpts o;
  app.add_option("--curve", o.curve, "curve literal, e.g. E/Q(i):[0,-1,0] or [A2,A4,A6] with --field")
      ->capture_default_str();
  app.add_option("--field", o.field, "field spec (Q, Q(i), Fp:<prime>) for a bare coefficient list");
  app.add_option("--g1", o.g1, "degree-2 isogeny for the first two-torsion slot");
  app.add_option("--g2", o.g2, "degree-2 isogeny for the second slot");
  app.add_option("--g3", o.g3, "degree-2 isogeny for the third slot");
  app.add_flag("--json", o.json_out, "JSON-lines output");
  app.add_flag("--pretty", o.pretty, "human-readable output");
  app.add_option("--precision", o.precision, "series terms for expand")->capture_default_str();
  app.add_flag("--extension-ok", o.extension_ok, "allow automatic quadratic extensions");
  app.add_option("--seed", o.seed, "seed for randomized verify suites")->capture_default_str();

  long psi_n = 0;
  auto* cpsi = app.add_subcommand("psi", "classical division polynomial");
  cpsi->add_option("-n", psi_n, "index")->required();

  std::string iso_lit;
  auto* cpiso = app.add_subcommand("psi-iso", "division polynomial of an isogeny");
  cpiso->add_option("--iso", iso_lit, "isogeny literal")->required();

  std::string hat_arg;
  auto* cphat = app.add_subcommand("psi-hat", "hat function of an index or isogeny");
  cphat->add_option("--iso", hat_arg, "index 0..3 or isogeny literal")->required();

  std::string kp_lit;
  auto* ckp = app.add_subcommand("kernel-poly", "kernel polynomial of an isogeny");
  ckp->add_option("--iso", kp_lit, "isogeny literal")->required();

  std::string velu_pt;
  auto* cvelu = app.add_subcommand("velu", "degree-2 quotient by a two-torsion point");
  cvelu->add_option("--point", velu_pt, "two-torsion point (x0,0)")->required();

  std::string verify_name = "all";
  std::string verify_isos;
  long verify_count = 50;
  auto* cver = app.add_subcommand("verify", "verify an identity or a randomized suite");
  cver->add_option("name", verify_name, "chain|chain2|chain-second|rel-x|rec1|rel-x2|rec2|pullback|suite");
  cver->add_option("--iso", verify_isos, "comma-separated isogeny literals");
  cver->add_option("--count", verify_count, "instances per identity in suite mode");

  std::string eds_pt;
  long eds_n = 10;
  auto* ceds = app.add_subcommand("eds", "elliptic divisibility sequence from a point");
  ceds->add_option("--point", eds_pt, "base point (x,y)")->required();
  ceds->add_option("-n", eds_n, "range")->capture_default_str();

  std::string net_pts;
  long net_box = 4;
  auto* cnet = app.add_subcommand("net", "rank-2 elliptic net from two points");
  cnet->add_option("--points", net_pts, "two point literals separated by ';'")->required();
  cnet->add_option("--box", net_box, "max index")->capture_default_str();

  std::string expand_expr;
  auto* cexp = app.add_subcommand("expand", "Laurent expansion of a function at the identity");
  cexp->add_option("--function", expand_expr, "expression in x, y")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    std::string curve_lit = o.curve;
    if (!o.field.empty()) {
      if (curve_lit.rfind("E/", 0) == 0)
        throw domain_error("--field conflicts with a curve literal that already names a field");
      curve_lit = "E/" + o.field + ":" + curve_lit;
    }
    WeierstrassCurve E = parse_curve(curve_lit);
    bool any_unequal = false;

    if (cpsi->parsed()) {
      std::cout << crf_str(CurveRationalFunction::from(classical_psi(E, psi_n))) << "\n";
    } else if (cpiso->parsed()) {
      PsiEngine eng = make_engine(E, o);
      HomElement h = parse_isogeny_literal(E, iso_lit);
      std::cout << crf_str(eng.psi(h).value) << "\n";
    } else if (cphat->parsed()) {
      PsiEngine eng = make_engine(E, o);
      if (hat_arg.size() == 1 && hat_arg[0] >= '0' && hat_arg[0] <= '3') {
        std::cout << crf_str(eng.psi_hat(hat_arg[0] - '0').value) << "\n";
      } else {
        HomElement h = parse_isogeny_literal(E, hat_arg);
        std::cout << crf_str(eng.psi_hat(eng.resolve(h)).value) << "\n";
      }
    } else if (ckp->parsed()) {
      HomElement h = parse_isogeny_literal(E, kp_lit);
      std::cout << polynomial_str(h.to_isogeny(E).kernel_polynomial()) << "\n";
    } else if (cvelu->parsed()) {
      Point P = parse_point(E, velu_pt);
      Isogeny phi = Isogeny::velu2(E, P);
      std::cout << "target: y^2 = " << polynomial_str(phi.target().fpoly()) << "\n";
      std::cout << "x-map: (" << polynomial_str(phi.xn()) << ")/(" << polynomial_str(phi.xd())
                << ")\n";
      std::cout << "y-map: y*(" << polynomial_str(phi.ys()) << ")/(" << polynomial_str(phi.yw())
                << ")\n";
    } else if (cver->parsed()) {
      // on a missing root, --extension-ok retries over the quadratic extension
      WeierstrassCurve base = E;
      for (int attempt = 0;; ++attempt) {
        try {
      PsiEngine eng = make_engine(base, o);
      const WeierstrassCurve& E = base;
      std::vector<HomElement> labels;
      for (const auto& lit : split_list(verify_isos))
        if (!lit.empty()) labels.push_back(parse_isogeny_literal(E, lit));
      auto need = [&](std::size_t n) {
        if (labels.size() < n) throw domain_error("verify needs " + std::to_string(n) + " labels");
      };
      if (verify_name == "chain" || verify_name == "chain2") {
        need(2);
        emit(verify_chain(eng, eng.resolve(labels[0]), labels[1], verify_name == "chain2"), o,
             any_unequal);
      } else if (verify_name == "chain-second") {
        need(3);
        std::vector<std::pair<HomElement, long>> e = {{labels[0] + labels[1], 1},
                                                      {labels[0] - labels[1], 1},
                                                      {labels[0], -2},
                                                      {labels[1], -2}};
        emit(verify_second_chain(eng, e, labels[2]), o, any_unequal);
      } else if (verify_name == "rel-x") {
        need(2);
        emit(verify_rel_x(eng, labels[0], labels[1]), o, any_unequal);
      } else if (verify_name == "rec1") {
        need(3);
        emit(verify_rec1(eng, labels[0], labels[1], labels[2]), o, any_unequal);
      } else if (verify_name == "rel-x2") {
        need(3);
        emit(verify_rel_x2(eng, labels[0], labels[1], labels[2]), o, any_unequal);
      } else if (verify_name == "rec2") {
        need(4);
        emit(verify_rec2(eng, labels[0], labels[1], labels[2], labels[3]), o, any_unequal);
      } else if (verify_name == "pullback") {
        need(2);
        KernelSymbolSum s;
        Isogeny phi = eng.resolve(labels[0]);
        s.add(phi, 1).add(Isogeny::identity(E), -phi.degree());
        emit(verify_pullback_lemma(eng, s, labels[1]), o, any_unequal);
      } else if (verify_name == "suite") {
        std::mt19937_64 rng(o.seed);
        auto rnd_label = [&]() {
          while (true) {
            long a = static_cast<long>(rng() % 7) - 3;
            long b = E.is_cm_by_i() ? static_cast<long>(rng() % 7) - 3 : 0;
            if (a == 0 && b == 0) continue;
            if (E.field()->is_finite() &&
                (a * a + b * b) % static_cast<long>(E.field()->p) == 0)
              continue;  // inseparable over this field
            return HomElement::gauss(a, b);
          }
        };
        for (long k = 0; k < verify_count; ++k) {
          HomElement a = rnd_label(), b = rnd_label(), c = rnd_label();
          try {
            emit(verify_rec1(eng, a, b, c), o, any_unequal);
          } catch (const domain_error&) {
            --k;  // degenerate draw, redo
          }
        }
      } else {
        throw domain_error("unknown verify name: " + verify_name);
      }
        break;
        } catch (const extension_required&) {
          if (attempt > 0 || !o.extension_ok || base.field()->kind != FieldKind::PrimeField)
            throw;
          base = lift_curve(base, Field::quad_ext(base.field()->p));
        }
      }
    } else if (ceds->parsed()) {
      Point P = parse_point(E, eds_pt);
      EllipticNet net = eds(E, P, eds_n);
      for (long n = -eds_n; n <= eds_n; ++n) {
        if (o.json_out) {
          json j;
          j["n"] = n;
          j["w"] = net.value(n).str();
          std::cout << j.dump() << "\n";
        } else {
          std::cout << n << "\t" << net.value(n).str() << "\n";
        }
      }
    } else if (cnet->parsed()) {
      std::size_t semi = net_pts.find(';');
      if (semi == std::string::npos) throw domain_error("--points needs 'P1;P2'");
      Point P1 = parse_point(E, net_pts.substr(0, semi));
      Point P2 = parse_point(E, net_pts.substr(semi + 1));
      EllipticNet net(E, P1, P2);
      for (long a = -net_box; a <= net_box; ++a) {
        for (long b = -net_box; b <= net_box; ++b) {
          if (o.json_out) {
            json j;
            j["a"] = a;
            j["b"] = b;
            j["w"] = net.value(a, b).str();
            std::cout << j.dump() << "\n";
          } else {
            std::cout << a << "\t" << b << "\t" << net.value(a, b).str() << "\n";
          }
        }
      }
    } else if (cexp->parsed()) {
      CurveRationalFunction h = parse_crf(E, expand_expr);
      std::cout << expand_at_O(h, o.precision).str() << "\n";
    }

    return any_unequal ? 1 : 0;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const extension_required& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
