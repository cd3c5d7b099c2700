// ncjet: exact computer algebra for differential calculi, jet modules, and
// differential operators over finite-dimensional associative algebras.

#include "ncjet/builtin.hpp"
#include "ncjet/diffops.hpp"
#include "ncjet/json_io.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace ncjet;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitMalformed = 2;

void emit(const Json& j, const std::string& out_path) {
  std::cout << j.dump(2) << "\n";
  if (!out_path.empty()) write_json_file(out_path, j);
}

std::string format_element(const Mat& coords, const std::vector<std::string>& labels) {
  std::string s;
  for (int i = 0; i < coords.rows(); ++i) {
    const Rational& c = coords.at(i, 0);
    if (c == 0) continue;
    std::string term;
    Rational abs = c < 0 ? Rational(-c) : c;
    bool unit_label = labels[size_t(i)] == "1";
    if (abs != 1 || unit_label) term += to_string(abs);
    if (!unit_label) term += labels[size_t(i)];
    if (s.empty())
      s = (c < 0 ? "-" : "") + term;
    else
      s += (c < 0 ? " - " : " + ") + term;
  }
  return s.empty() ? "0" : s;
}

/// dx expressed over a left-free basis of one-forms, e.g. "-j di + i dj".
std::string format_one_form(const std::vector<Mat>& coeffs, const std::vector<std::string>& theta,
                            const std::vector<std::string>& labels) {
  std::string s;
  for (size_t t = 0; t < coeffs.size(); ++t) {
    if (coeffs[t].is_zero()) continue;
    std::string c = format_element(coeffs[t], labels);
    std::string term;
    if (c == "1")
      term = theta[t];
    else if (c == "-1")
      term = "-" + theta[t];
    else
      term = c + " " + theta[t];
    if (s.empty())
      s = term;
    else if (!term.empty() && term[0] == '-')
      s += " + " + term;  // keep the sign inside the coefficient
    else
      s += " + " + term;
  }
  return s.empty() ? "0" : s;
}

ModulePtr k0_module(const AlgebraPtr& dual) {
  Module k0;
  k0.alg = dual;
  k0.dim = 1;
  Mat one(1, 1);
  one.at(0, 0) = 1;
  k0.left = {one, Mat(1, 1)};
  k0.right = {one, Mat(1, 1)};
  return make_module(std::move(k0));
}

Json exactness_to_json(const JetExactness& ex) {
  Json j;
  j["order"] = ex.order;
  j["sub_dim"] = ex.sub_dim;
  j["mid_dim"] = ex.mid_dim;
  j["quot_dim"] = ex.quot_dim;
  j["first_injective"] = ex.flags.first_injective;
  j["middle_exact"] = ex.flags.middle_exact;
  j["last_surjective"] = ex.flags.last_surjective;
  j["exact"] = ex.flags.exact();
  j["coker_dim"] = ex.coker_dim;
  if (ex.obstruction_class_dim >= 0) j["obstruction_class_dim"] = ex.obstruction_class_dim;
  return j;
}

struct SessionInputs {
  AlgebraPtr algebra;
  std::shared_ptr<const Calculus> calculus;
  ModulePtr module;  // defaults to the algebra itself
};

SessionInputs load_session(const std::string& algebra_path, const std::string& calculus_path,
                           const std::string& module_path) {
  SessionInputs s;
  s.algebra = algebra_from_json(load_json_file(algebra_path));
  if (!calculus_path.empty())
    s.calculus = std::make_shared<Calculus>(
        calculus_from_json(s.algebra, load_json_file(calculus_path)));
  if (!module_path.empty())
    s.module = module_from_json(s.algebra, load_json_file(module_path));
  return s;
}

int cmd_validate(const std::string& algebra_path, const std::string& calculus_path,
                 const std::string& module_path, const std::string& out_path) {
  Json rep;
  SessionInputs s = load_session(algebra_path, calculus_path, module_path);
  rep["algebra"] = Json{{"name", s.algebra->name}, {"dim", s.algebra->dim}, {"valid", true}};
  if (s.calculus) {
    CalculusReport cr = validate_calculus(*s.calculus);
    rep["calculus"] = Json{{"dim_one_forms", s.calculus->omega1->dim},
                           {"leibniz", cr.leibniz},
                           {"surjective", cr.surjective},
                           {"valid", cr.pass()}};
    if (!cr.pass()) {
      emit(rep, out_path);
      return kExitValidation;
    }
  }
  if (s.module) rep["module"] = Json{{"dim", s.module->dim}, {"valid", true}};
  rep["valid"] = true;
  emit(rep, out_path);
  return kExitOk;
}

int cmd_jets(const std::string& algebra_path, const std::string& calculus_path,
             const std::string& module_path, const std::string& flavor_name, int order,
             int truncate, const std::string& out_path) {
  SessionInputs s = load_session(algebra_path, calculus_path, module_path);
  if (!s.calculus) throw ParseError("jets: --calculus is required");
  auto flavor = parse_flavor(flavor_name);
  if (!flavor) throw ParseError("unknown flavor: " + flavor_name);

  std::shared_ptr<const ExteriorAlgebra> ext;
  if (*flavor == JetFlavor::holonomic || *flavor == JetFlavor::sesquiholonomic)
    ext = std::make_shared<ExteriorAlgebra>(maximal_exterior(s.calculus, truncate));
  JetContext ctx(s.calculus, ext);
  ModulePtr e = s.module ? s.module : ctx.algebra_module();

  Json rep;
  rep["flavor"] = to_string(*flavor);
  rep["order"] = order;
  Json dims = Json::array();
  Json exactness = Json::array();
  for (int n = 0; n <= order; ++n) {
    dims.push_back(ctx.jet_space(*flavor, e, n).carrier->dim);
    if (n >= 1) exactness.push_back(exactness_to_json(ctx.exactness_report(*flavor, e, n)));
  }
  rep["dims"] = std::move(dims);
  rep["exactness"] = std::move(exactness);
  rep["one_forms_right_flat"] = ctx.omega1_right_flat();
  emit(rep, out_path);
  return kExitOk;
}

int cmd_spencer(const std::string& algebra_path, const std::string& calculus_path, int truncate,
                const std::string& out_path) {
  SessionInputs s = load_session(algebra_path, calculus_path, "");
  if (!s.calculus) throw ParseError("spencer: --calculus is required");
  auto ext = std::make_shared<ExteriorAlgebra>(maximal_exterior(s.calculus, truncate));
  JetContext ctx(s.calculus, ext);
  SymTower sym = symmetric_forms(*ext, ctx.algebra_module(), truncate);
  SpencerComplex sp(*ext, sym);

  Json rep;
  Json grades = Json::array();
  for (const auto& g : ext->grade) grades.push_back(g->dim);
  rep["grades"] = std::move(grades);
  Json sym_dims = Json::array();
  for (int h = 0; h <= truncate; ++h) sym_dims.push_back(sym.at(h)->dim);
  rep["symmetric_dims"] = std::move(sym_dims);
  Json table = Json::object();
  for (int h = 0; h <= truncate; ++h)
    for (int k = 0; k <= ext->max_grade; ++k) {
      if (h >= 1 && k + 1 > ext->max_grade) continue;  // unknown beyond the truncation
      auto coh = sp.cohomology(h, k);
      table[std::to_string(h) + "," + std::to_string(k)] =
          Json{{"node", coh.node_dim}, {"ker", coh.ker_dim}, {"im", coh.im_dim}, {"H", coh.h_dim}};
    }
  rep["spencer"] = std::move(table);
  rep["beyond_truncation"] = "unknown";
  emit(rep, out_path);
  return kExitOk;
}

int cmd_tor(const std::string& algebra_path, const std::string& m_path, const std::string& n_path,
            int depth, const std::string& out_path) {
  AlgebraPtr a = algebra_from_json(load_json_file(algebra_path));
  ModulePtr m = module_from_json(a, load_json_file(m_path));
  ModulePtr n = module_from_json(a, load_json_file(n_path));
  if (!m->has_right()) throw ValidationError("tor: M needs a right action");
  if (!n->has_left()) throw ValidationError("tor: N needs a left action");
  FreeResolution res = free_resolution(n, depth + 1);
  Json rep;
  rep["depth"] = depth;
  Json dims = Json::array();
  for (int d = 0; d <= depth; ++d) dims.push_back(tor(*m, res, d).dim);
  rep["dims"] = std::move(dims);
  emit(rep, out_path);
  return kExitOk;
}

int cmd_diffop(const std::string& algebra_path, const std::string& calculus_path,
               const std::string& op_path, const std::string& flavor_name, int max_order,
               int truncate, const std::string& out_path) {
  SessionInputs s = load_session(algebra_path, calculus_path, "");
  if (!s.calculus) throw ParseError("diffop: --calculus is required");
  auto flavor = parse_flavor(flavor_name);
  if (!flavor) throw ParseError("unknown flavor: " + flavor_name);
  auto ext = std::make_shared<ExteriorAlgebra>(maximal_exterior(s.calculus, truncate));
  JetContext ctx(s.calculus, ext);

  Json op_spec = load_json_file(op_path);
  auto resolve = [&](const Json& ref) -> ModulePtr {
    if (ref.is_string()) {
      std::string name = ref.get<std::string>();
      if (name == "algebra") return ctx.algebra_module();
      if (name == "one_forms") return s.calculus->omega1;
      return module_from_json(s.algebra, load_json_file(name));
    }
    throw ParseError("op domain/codomain must be \"algebra\", \"one_forms\", or a module path");
  };
  ModulePtr dom = resolve(op_spec.value("domain", Json("algebra")));
  ModulePtr cod = resolve(op_spec.value("codomain", Json("algebra")));
  Mat delta = matrix_from_json(op_spec.at("matrix"));
  if (delta.rows() != cod->dim || delta.cols() != dom->dim)
    throw ValidationError("diffop: operator matrix shape does not match the modules");

  Json rep;
  rep["flavor"] = to_string(*flavor);
  rep["max_order"] = max_order;
  int order = operator_order(ctx, delta, dom, cod, *flavor, max_order);
  if (order < 0) {
    rep["order"] = ">" + std::to_string(max_order);
  } else {
    rep["order"] = order;
    auto cert = order_at_most(ctx, delta, dom, cod, order, *flavor);
    rep["lift"] = matrix_to_json(cert->lift);
    rep["lift_solution_space_dim"] = cert->solution_space_dim;
  }
  emit(rep, out_path);
  return kExitOk;
}

Json quaternion_report() {
  AlgebraPtr h = quaternions();
  Json rep;
  rep["example"] = "quaternion";
  rep["algebra"] = Json{{"name", h->name}, {"dim", h->dim}, {"valid", validate_algebra(*h).pass()}};

  Calculus univ = universal_calculus(h);
  rep["universal_calculus"] = Json{{"dim_one_forms", univ.omega1->dim}};

  TerminalCalculus ti = terminal_calculus(h, {h->element("i")});
  TerminalCalculus tj = terminal_calculus(h, {h->element("j")});
  TerminalCalculus tij = terminal_calculus(h, {h->element("i"), h->element("j")});
  rep["terminal_kernels"] = Json{{"N_i", ti.per_element_kernels[0].dim()},
                                 {"N_j", tj.per_element_kernels[0].dim()},
                                 {"N_ij", tij.calc.relation_space.dim()}};

  auto c = std::make_shared<Calculus>(tij.calc);
  std::vector<Mat> theta = {c->d_of(h->element("i")), c->d_of(h->element("j"))};
  StructureRelations sr = structure_relations(*c, theta);
  Json structure = Json::object();
  for (int x = 0; x < h->dim; ++x)
    structure["d" + h->basis[size_t(x)]] =
        format_one_form(sr.d_coeffs[size_t(x)], {"di", "dj"}, h->basis);
  Json relations = Json::object();
  auto bimodule_relation = [&](const std::string& a_lbl, int t, int sign) {
    // a·θ_t − sign·θ_t·a
    Mat lhs = c->omega1->lact(h->element(a_lbl)) * theta[size_t(t)];
    Mat rhs = (c->omega1->ract(h->element(a_lbl)) * theta[size_t(t)]).scaled(sign);
    return lhs == rhs;
  };
  relations["i di = -(di)i"] = bimodule_relation("i", 0, -1);
  relations["j di = -(di)j"] = bimodule_relation("j", 0, -1);
  relations["k di = (di)k"] = bimodule_relation("k", 0, 1);
  relations["i dj = -(dj)i"] = bimodule_relation("i", 1, -1);
  relations["j dj = -(dj)j"] = bimodule_relation("j", 1, -1);
  relations["k dj = (dj)k"] = bimodule_relation("k", 1, 1);
  rep["calculus"] = Json{{"dim_one_forms", c->omega1->dim},
                         {"left_free_rank", 2},
                         {"free_basis", Json::array({"di", "dj"})},
                         {"structure", std::move(structure)},
                         {"bimodule_relations", std::move(relations)},
                         {"valid", validate_calculus(*c).pass()}};

  auto ext = std::make_shared<ExteriorAlgebra>(maximal_exterior(c, 3));
  Json grades = Json::array();
  for (const auto& g : ext->grade) grades.push_back(g->dim);
  rep["exterior"] =
      Json{{"grades", std::move(grades)}, {"valid", validate_exterior(*ext).pass()}};

  JetContext ctx(c, ext);
  ModulePtr e = ctx.algebra_module();
  SymTower sym = symmetric_forms(*ext, e, 3);
  Mat gen = ext->tensors.steps[1].proj *
            (Mat::kron(theta[0], theta[1]) - Mat::kron(theta[1], theta[0]));
  bool s2_gen = image(sym.level[2].incl_tensor).contains(gen) &&
                submodule_closure(*ext->tensors.at(2), {gen}) == image(sym.level[2].incl_tensor);
  rep["symmetric_forms"] = Json{{"S2_dim", sym.at(2)->dim},
                                {"S2_generated_by_di_dj_minus_dj_di", s2_gen},
                                {"S3_dim", sym.at(3)->dim},
                                {"min_sym2_equals_S2", ext->min_sym2 == image(sym.level[2].incl_tensor)}};

  SpencerComplex sp(*ext, sym);
  Json spencer = Json::object();
  for (int hh = 1; hh <= 3; ++hh) {
    auto coh = sp.cohomology(hh, 2);
    spencer[std::to_string(hh) + ",2"] =
        Json{{"node", coh.node_dim}, {"ker", coh.ker_dim}, {"im", coh.im_dim}, {"H", coh.h_dim}};
  }
  rep["spencer"] = std::move(spencer);

  Json jets;
  jets["J1"] = ctx.jet_space(JetFlavor::holonomic, e, 1).carrier->dim;
  jets["J2"] = ctx.jet_space(JetFlavor::holonomic, e, 2).carrier->dim;
  jets["J3"] = ctx.jet_space(JetFlavor::holonomic, e, 3).carrier->dim;
  jets["J[2]"] = ctx.jet_space(JetFlavor::semiholonomic, e, 2).carrier->dim;
  jets["J(2)"] = ctx.jet_space(JetFlavor::nonholonomic, e, 2).carrier->dim;
  Json hol_exact = Json::array();
  for (int n = 1; n <= 3; ++n)
    hol_exact.push_back(ctx.exactness_report(JetFlavor::holonomic, e, n).flags.exact());
  jets["holonomic_exact"] = std::move(hol_exact);
  jets["semiholonomic_2_exact"] =
      ctx.exactness_report(JetFlavor::semiholonomic, e, 2).flags.exact();
  jets["two_route_J2_agrees"] = ctx.two_jet_presentation_agrees(e);
  jets["stabilizes_at_2"] = jets["J2"] == jets["J3"];
  rep["jets"] = std::move(jets);

  rep["homology"] = Json{{"one_forms_right_projective", is_right_projective(*c->omega1)},
                         {"one_forms_left_projective", is_projective(*c->omega1)}};

  QuaternionOperatorReport ops = quaternion_operator_report(ctx);
  Json op_json;
  op_json["diff_dims"] = ops.diff_dims;
  op_json["basis_spans"] = ops.basis_spans;
  op_json["partial_squares_vanish"] = ops.partial_squares_vanish;
  op_json["partials_anticommute"] = ops.partial_anticommute;
  op_json["anticommutators_unit"] = ops.anticom_unit;
  op_json["anticommutators_zero"] = ops.anticom_zero;
  op_json["commutators_match"] = ops.commutators_match;
  op_json["orders"] = Json{{"L_i", ops.order_L_i},         {"L_j", ops.order_L_j},
                           {"L_k", ops.order_L_k},         {"partial_i", ops.order_partial_i},
                           {"partial_j", ops.order_partial_j}, {"laplacian", ops.order_laplacian}};
  op_json["laplacian_is_bracket"] = ops.laplacian_is_bracket;
  op_json["laplacian_identity"] = ops.laplacian.identity_holds;
  op_json["metric_in_S2"] = ops.laplacian.metric_symmetric;
  op_json["inner_product_bilinear"] = ops.laplacian.inner_product_bilinear;
  op_json["pass"] = ops.pass();
  rep["operators"] = std::move(op_json);
  return rep;
}

Json infinitesimal_report() {
  AlgebraPtr a = dual_numbers();
  Json rep;
  rep["example"] = "infinitesimal";
  rep["algebra"] = Json{{"name", a->name}, {"dim", a->dim}, {"valid", validate_algebra(*a).pass()}};

  Calculus univ = universal_calculus(a);
  rep["universal_calculus"] = Json{{"dim_one_forms", univ.omega1->dim}};
  Mat tdt = univ.retr_univ * Mat::kron(a->element("t"), a->element("t"));
  auto c = std::make_shared<Calculus>(quotient_calculus(univ, {tdt}));
  rep["calculus"] = Json{{"dim_one_forms", c->omega1->dim},
                         {"relation_dim", c->relation_space.dim()},
                         {"valid", validate_calculus(*c).pass()}};

  auto ext = std::make_shared<ExteriorAlgebra>(maximal_exterior(c, 3));
  Json grades = Json::array();
  for (const auto& g : ext->grade) grades.push_back(g->dim);
  rep["exterior"] = Json{{"grades", std::move(grades)}, {"valid", validate_exterior(*ext).pass()}};

  JetContext ctx(c, ext);
  ModulePtr e = ctx.algebra_module();
  Json jets;
  jets["J1"] = ctx.jet1(e).carrier->dim;
  jets["ses_exact"] = ctx.exactness_report(JetFlavor::holonomic, e, 1).flags.exact();
  // J¹ applied to the inclusion of forms into the 1-jet of the one-forms
  const Jet1& j_omega = ctx.jet1(c->omega1);
  Mat incl = j_omega.incl_forms;
  Mat j1_of_incl = ctx.jet1_of_map(j_omega.forms.carrier, j_omega.carrier, incl);
  jets["J1_of_forms_inclusion_kernel_dim"] = kernel(j1_of_incl).dim();
  rep["jets"] = std::move(jets);

  Json tensor_dims = Json::array();
  for (int k = 0; k <= 3; ++k) tensor_dims.push_back(ext->tensors.at(k)->dim);
  rep["tensor_power_dims"] = std::move(tensor_dims);

  ModulePtr k0 = k0_module(a);
  FreeResolution res = free_resolution(k0, 6);
  Json tor_dims = Json::array();
  for (int d = 0; d <= 5; ++d) tor_dims.push_back(tor(*k0, res, d).dim);
  rep["tor_k0_k0"] = std::move(tor_dims);

  // N(E) against N⊗E for E = k[0]
  const Jet1& jk0 = ctx.jet1(k0);
  SubmoduleCarrier nd = restrict_to(*c->univ, c->relation_space);
  TensorSpace nd_e = tensor_over_A(*nd.carrier, *k0);
  Json nde;
  nde["kernel_route_dim"] = jk0.relations.dim();
  nde["tensor_route_dim"] = nd_e.carrier->dim;
  nde["tor1_omega1_k0"] = tor(*c->omega1, k0, 1, 3).dim;
  rep["relations_comparison"] = std::move(nde);

  ConnectionSpace cs = connections(ctx, k0);
  rep["k0"] = Json{{"projective", is_projective(*k0)},
                   {"flat", is_flat(*k0)},
                   {"connection_exists", cs.exists}};
  return rep;
}

int cmd_report(const std::string& which, const std::string& out_path) {
  if (which == "quaternion") {
    emit(quaternion_report(), out_path);
    return kExitOk;
  }
  if (which == "infinitesimal") {
    emit(infinitesimal_report(), out_path);
    return kExitOk;
  }
  throw ParseError("unknown report: " + which + " (expected quaternion|infinitesimal)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact noncommutative jet calculus"};
  app.require_subcommand(1);

  std::string algebra_path, calculus_path, module_path, out_path;
  std::string flavor = "holonomic";
  int order = 2, truncate = 3, depth = 5, max_order = 4;

  auto add_common = [&](CLI::App* cmd, bool need_calculus) {
    cmd->add_option("--algebra", algebra_path, "algebra spec (JSON)")->required();
    auto* c = cmd->add_option("--calculus", calculus_path, "calculus spec (JSON)");
    if (need_calculus) c->required();
    cmd->add_option("--out", out_path, "also write the report to this path");
  };

  auto* validate = app.add_subcommand("validate", "validate algebra/calculus/module specs");
  add_common(validate, false);
  validate->add_option("--module", module_path, "module spec (JSON)");

  auto* jets = app.add_subcommand("jets", "jet tower dims and exactness report");
  add_common(jets, true);
  jets->add_option("--module", module_path, "module spec (JSON; defaults to the algebra)");
  jets->add_option("--flavor", flavor, "nonholonomic|semiholonomic|sesquiholonomic|holonomic");
  jets->add_option("--order", order, "top jet order");
  jets->add_option("--truncate", truncate, "exterior algebra truncation grade");
  jets->add_option("--report", out_path, "alias for --out");

  auto* spencer = app.add_subcommand("spencer", "exterior grades and Spencer cohomology");
  add_common(spencer, true);
  spencer->add_option("--truncate", truncate, "exterior algebra truncation grade");

  auto* torc = app.add_subcommand("tor", "Tor dims from a free resolution");
  torc->add_option("--algebra", algebra_path, "algebra spec (JSON)")->required();
  std::string m_path, n_path;
  torc->add_option("--M", m_path, "right module spec (JSON)")->required();
  torc->add_option("--N", n_path, "left module spec (JSON)")->required();
  torc->add_option("--depth", depth, "maximal Tor degree");
  torc->add_option("--out", out_path, "also write the report to this path");

  auto* diffop = app.add_subcommand("diffop", "classify a linear map as a differential operator");
  add_common(diffop, true);
  std::string op_path;
  diffop->add_option("--op", op_path, "operator spec (JSON)")->required();
  diffop->add_option("--flavor", flavor, "jet flavor for the lift");
  diffop->add_option("--max-order", max_order, "order scan bound");
  diffop->add_option("--truncate", truncate, "exterior algebra truncation grade");

  auto* report = app.add_subcommand("report", "golden example reports");
  std::string which;
  report->add_option("example", which, "quaternion|infinitesimal")->required();
  report->add_option("--out", out_path, "also write the report to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitMalformed;
  }

  try {
    if (validate->parsed()) return cmd_validate(algebra_path, calculus_path, module_path, out_path);
    if (jets->parsed())
      return cmd_jets(algebra_path, calculus_path, module_path, flavor, order, truncate, out_path);
    if (spencer->parsed()) return cmd_spencer(algebra_path, calculus_path, truncate, out_path);
    if (torc->parsed()) return cmd_tor(algebra_path, m_path, n_path, depth, out_path);
    if (diffop->parsed())
      return cmd_diffop(algebra_path, calculus_path, op_path, flavor, max_order, truncate, out_path);
    if (report->parsed()) return cmd_report(which, out_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const ValidationError& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitMalformed;
}
