#include "hse/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hse/io.hpp"
#include "hse/oracle.hpp"

namespace hse {

namespace {

// Raised for bad flags or inputs that do not fit the command.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* yes(bool b) { return b ? "true" : "false"; }

std::string invariants_text(const AbelianInvariants& A) {
  std::string s;
  for (const auto& t : A.torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + t.get_str();
  if (A.free_rank > 0)
    s += (s.empty() ? "" : " + ") + std::string("Z") + (A.free_rank > 1 ? "^" + std::to_string(A.free_rank) : "");
  return s.empty() ? "0" : s;
}

std::string ideal_text(const IdealLattice& I) {
  if (I.is_zero()) return "0";
  const auto& G = I.group();
  std::string s = "<";
  for (std::size_t i = 0; i < I.lattice().rank(); ++i)
    s += (i ? ", " : "") + format_element(unflatten(G, I.lattice().basis_row(i))[0]);
  return s + ">";
}

std::string wedge_name(const std::vector<int>& S) {
  std::string s;
  for (std::size_t i = 0; i < S.size(); ++i) s += (i ? "^" : "") + std::string("b") + std::to_string(S[i] + 1);
  return s;
}

bool is_monomial(const QG& x) {
  int nz = 0;
  for (int g = 0; g < x.group().order(); ++g) nz += x[g] != 0;
  return nz <= 1;
}

std::string wedge_text(const std::vector<QG>& eta, std::size_t d, int a) {
  if (a == 0) return format_element(eta.at(0));
  auto S = subsets(static_cast<int>(d), a);
  std::string s;
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (eta[i].is_zero()) continue;
    std::string c = format_element(eta[i]);
    if (!is_monomial(eta[i])) c = "(" + c + ")";
    else if (c == "1") c.clear();
    else if (c == "-1") c = "-";
    if (!s.empty()) {
      if (c[0] == '-') {
        s += " - ";
        c = c.substr(1);
      } else {
        s += " + ";
      }
    }
    s += c + (c.empty() || c == "-" ? "" : "*") + wedge_name(S[i]);
  }
  return s.empty() ? "0" : s;
}

InstanceFile load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

const StrictComplex& need_strict(const InstanceFile& f, const std::string& cmd) {
  if (!f.strict) throw UsageError(cmd + " needs a strict complex");
  return f.C;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

// --x "b1,b3" selects standard basis vectors of P; otherwise X comes from
// the file. --a, when given, must match.
ZGMatrix resolve_x(const InstanceFile& f, const std::string& flag, int a) {
  ZGMatrix X;
  const std::size_t d = f.d();
  if (!flag.empty()) {
    auto toks = split(flag, ',');
    X = ZGMatrix(f.G, d, toks.size());
    for (std::size_t j = 0; j < toks.size(); ++j) {
      const auto& t = toks[j];
      std::size_t k = 0;
      try {
        if (t.size() < 2 || t[0] != 'b') throw std::invalid_argument(t);
        k = std::stoul(t.substr(1));
      } catch (const std::exception&) {
        throw UsageError("--x: expected basis names like b1, got \"" + t + "\"");
      }
      if (k < 1 || k > d) throw UsageError("--x: " + t + " out of range for d = " + std::to_string(d));
      X(k - 1, j) = ZG::one(f.G);
    }
  } else if (f.X) {
    X = *f.X;
  } else if (a <= 0) {
    X = ZGMatrix(f.G, d, 0);
  } else {
    throw UsageError("no X in the file; pass --x");
  }
  if (a >= 0 && static_cast<std::size_t>(a) != X.cols())
    throw UsageError("--a " + std::to_string(a) + " does not match |X| = " + std::to_string(X.cols()));
  return X;
}

// --subgroup "g1,g2^2": powers of the cyclic generators; "e" is the identity.
std::vector<int> resolve_subgroup(const InstanceFile& f, const std::string& flag) {
  if (flag.empty()) {
    if (!f.subgroup) throw UsageError("no subgroup in the file; pass --subgroup");
    return f.subgroup_indices();
  }
  std::vector<int> gens;
  for (const auto& t : split(flag, ',')) {
    if (t == "e" || t == "1") {
      gens.push_back(0);
      continue;
    }
    try {
      if (t.size() < 2 || t[0] != 'g') throw std::invalid_argument(t);
      const auto caret = t.find('^');
      const int i = std::stoi(t.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
      const long k = caret == std::string::npos ? 1 : std::stol(t.substr(caret + 1));
      if (i < 1 || i > f.G.rank()) throw std::out_of_range(t);
      gens.push_back(f.G.pow(f.G.generator(i - 1), k));
    } catch (const std::exception&) {
      throw UsageError("--subgroup: bad generator \"" + t + "\"");
    }
  }
  return gens;
}

std::string residues(const FiniteAbelianGroup& G, int g) {
  std::string s = "[";
  auto r = G.element(g);
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
  return s + "]";
}

struct Options {
  std::string file;
  int a = -1;
  std::string x, subgroup, group = "2", out;
  unsigned seed = 1;
  long prime = 0;
  bool oracle = false, three_term = false;
  std::size_t d = 2;
};

LambdaMap lambda_of(const InstanceFile& f) {
  return f.lambda ? *f.lambda : LambdaMap::canonical(f.G, f.spaces());
}

// --- subcommands -----------------------------------------------------------------

int cmd_cohomology(const Options& o, std::ostream& out) {
  InstanceFile f = load(o.file);
  CohomologyData H = f.strict ? cohomology(f.C) : cohomology(f.three);
  out << "group: " << f.G.to_string() << "\n";
  if (f.strict) {
    out << "H1 = " << invariants_text(H.H1.invariants()) << ", H2 = " << invariants_text(H.H2.invariants()) << "\n";
  } else {
    out << "H0 = " << invariants_text(H.H0.invariants()) << ", H1 = " << invariants_text(H.H1.invariants())
        << ", H2 = " << invariants_text(H.H2.invariants()) << ", H3 = " << invariants_text(H.H3.invariants())
        << "\n";
  }
  out << "ranks:";
  for (int r : H.ranks) out << " " << r;
  out << "\n";
  return 0;
}

int cmd_fitting(const Options& o, std::ostream& out) {
  InstanceFile f = load(o.file);
  CohomologyData H = f.strict ? cohomology(f.C) : cohomology(f.three);
  const PresentedModule& M = H.H2_presented;
  const int lo = o.a >= 0 ? o.a : 0;
  const int hi = o.a >= 0 ? o.a : static_cast<int>(M.generators);
  bool all = true;
  for (int a = lo; a <= hi; ++a) {
    IdealLattice F = fitting_ideal(M, a);
    out << "Fit^" << a << "(H2) = " << ideal_text(F) << "\n";
    if (o.oracle) {
      const bool agree = oracle::brute_force_fitting(M, a, o.seed) == oracle::OracleLattice::from_main(F.lattice());
      out << "oracle Fit^" << a << ": " << (agree ? "pass" : "FAIL") << "\n";
      all = all && agree;
    }
  }
  return all ? 0 : 1;
}

int cmd_eta(const Options& o, std::ostream& out) {
  InstanceFile f = load(o.file);
  const StrictComplex& C = need_strict(f, "eta");
  ZGMatrix X = resolve_x(f, o.x, o.a);
  const int a = static_cast<int>(X.cols());
  LambdaMap lam = lambda_of(f);
  ThetaResult th = theta_det(C, lam);
  SpecialElement se = special_element(C, lam, th.u, X);
  CohomologyData H = cohomology(C);
  out << "a: " << a << "\n";
  out << "L = " << format_element(th.u) << "\n";
  out << "eta = " << wedge_text(se.eta, C.d(), a) << "\n";
  out << "I(eta) = " << ideal_text(evaluation_lattice(se.eta, *H.H1_lattice, a)) << "\n";
  bool ok = true;
  if (separability_test(C.psi, X).separable) {
    AdaptedBasis B = adapted_basis(C, X, o.seed);
    if (B.ok) {
      const bool same = eta_minor_formula(B, th.u, th.u) == pad_wedge(se.eta, C.d(), B.stabilized, a);
      out << "minor formula agrees: " << yes(same) << "\n";
      ok = same;
    }
  }
  return ok ? 0 : 1;
}

int cmd_charels(const Options& o, std::ostream& out) {
  InstanceFile f = load(o.file);
  const StrictComplex& C = need_strict(f, "check-charels");
  ZGMatrix X = resolve_x(f, o.x, o.a);
  LambdaMap lam = lambda_of(f);
  ThetaResult th = theta_det(C, lam);
  CharelsReport R = check_charels(C, lam, th.u, X, f.x_element);
  if (!R.x_valid) throw UsageError("x_element is not in Z[G] e_(a)");
  out << "a: " << R.a << "\n";
  out << "x = " << format_element(R.x) << "\n";
  out << "separable: " << yes(R.separable) << "\n";
  out << "I(eta) = " << ideal_text(R.I_eta) << "\n";
  out << "Fit^a = " << ideal_text(R.fit) << "\n";
  out << "x I(eta) in Fit^a: " << yes(R.fit_inclusion) << "\n";
  out << "x I(eta) in Ann(H2_tor): " << yes(R.ann_inclusion) << "\n";
  if (R.separable) {
    out << "e_(a) == 1: " << yes(R.e_at_least_one) << "\n";
    out << "I(eta) == Fit^a: " << yes(R.fit_equality) << "\n";
  }
  out << "x eta in bidual: " << yes(R.x_eta_integral) << "\n";
  out << "integrality for all subsets: " << yes(R.integrality_all) << "\n";
  if (!R.witness.empty()) out << "witness: " << R.witness << "\n";
  out << "ok: " << yes(R.ok()) << "\n";
  return R.ok() ? 0 : 1;
}

int cmd_pairing(const Options& o, std::ostream& out) {
  InstanceFile f = load(o.file);
  const StrictComplex& C = need_strict(f, "pairing");
  ZGMatrix X = resolve_x(f, o.x, o.a);
  LambdaMap lam = lambda_of(f);
  ThetaResult th = theta_det(C, lam);
  PairingReport P = pairing(C, lam, th.u, X, f.x_element);
  out << "left = " << invariants_text(P.left) << "\n";
  out << "right = " << invariants_text(P.right) << "\n";
  out << "matrix:";
  for (std::size_t i = 0; i < P.matrix.rows(); ++i) {
    out << (i ? " ;" : "");
    for (std::size_t j = 0; j < P.matrix.cols(); ++j) out << " " << P.matrix(i, j);
  }
  out << "\n";
  out << "well defined: " << yes(P.well_defined) << "\n";
  out << "perfect: " << yes(P.perfect) << "\n";
  out << "sequence orders: " << P.seq_left << " " << P.seq_middle << " " << P.seq_right << "\n";
  out << "sequence exact: " << yes(P.sequence_exact_orders) << "\n";
  bool ok = P.well_defined && P.perfect && P.sequence_exact_orders;
  if (o.oracle) {
    std::vector<std::vector<mpq_class>> vals(P.matrix.rows());
    for (std::size_t i = 0; i < P.matrix.rows(); ++i) vals[i] = P.matrix.row(i);
    const bool agree = oracle::pairing_oracle(P.left.torsion, P.right.torsion, vals) == P.perfect;
    out << "oracle: " << (agree ? "pass" : "FAIL") << "\n";
    ok = ok && agree;
  }
  if (!P.witness.empty()) out << "witness: " << P.witness << "\n";
  return ok ? 0 : 1;
}

void print_tensor(std::ostream& out, const char* name, const JTensor& T, const FiniteAbelianGroup& G) {
  const int n = G.order();
  bool any = false;
  for (std::size_t t = 0; t < T.N; ++t)
    for (int g = 0; g < n; ++g) {
      const ZG& v = T.values[t * n + g];
      if (v.is_zero()) continue;
      out << name << "[" << t << "][" << residues(G, g) << "] = " << format_element(v) << "\n";
      any = true;
    }
  if (!any) out << name << " = 0\n";
}

int cmd_mrs(const Options& o, std::ostream& out) {
  InstanceFile f = load(o.file);
  const StrictComplex& C = need_strict(f, "check-mrs");
  ZGMatrix X = resolve_x(f, o.x, o.a);
  std::vector<int> gens = resolve_subgroup(f, o.subgroup);
  QuotientGroup Q = quotient_group(f.G, gens);
  ZGMatrix Xp = f.Xprime ? project_matrix(Q, *f.Xprime) : ZGMatrix(Q.quotient, C.d(), 0);
  DescentDatum D = make_descent_datum(C, gens, X, Xp);
  LambdaMap lam = lambda_of(f);
  MRSReport R = check_mrs(D, lam, theta_det(C, lam).u);
  out << "J:";
  for (int g : Q.subgroup) out << " " << residues(f.G, g);
  out << "\n";
  out << "a: " << R.a << ", a': " << R.a_prime << ", k: " << R.k << "\n";
  out << "theta descends: " << yes(R.theta_descends) << "\n";
  out << "eta_X integral: " << yes(R.eta_X_integral) << "\n";
  out << "eta_X' integral: " << yes(R.eta_Xp_integral) << "\n";
  out << "norm in I^k: " << yes(R.norm_in_Q) << "\n";
  for (const auto& c : R.choices) {
    out << "choice " << c.choice << ": basis " << yes(c.basis_found) << ", congruence " << yes(c.congruence)
        << ", lift independent " << yes(c.lift_independent) << "\n";
  }
  if (!R.choices.empty() && R.choices[0].basis_found) {
    out << "sides compared modulo: I(J)^" << R.k + 1 << "\n";
    print_tensor(out, "lhs", R.choices[0].lhs, f.G);
    print_tensor(out, "rhs", R.choices[0].rhs, f.G);
  }
  out << "congruence: " << yes(R.congruence) << "\n";
  out << "choice independent: " << yes(R.choice_independent) << "\n";
  if (!R.reason.empty()) out << "witness: " << R.reason << "\n";
  out << "ok: " << yes(R.ok()) << "\n";
  return R.ok() ? 0 : 1;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  InstanceFile f = load(o.file);
  if (f.strict) throw UsageError("reduce needs a three-term complex");
  CohomologyData H = cohomology(f.three);
  if (!H.H3.invariants().is_finite()) throw UsageError("reduce needs finite H3");
  std::vector<long> modes;
  if (o.prime > 0) {
    modes.push_back(o.prime);
  } else {
    modes.push_back(0);
    mpz_class m = H.H3.invariants().torsion_order();
    for (long p = 2; m > 1; ++p)
      if (m % p == 0) {
        modes.push_back(p);
        while (m % p == 0) m /= p;
      }
  }
  bool ok = true;
  for (long p : modes) {
    ReductionResult R = reduce_to_strict(f.three, p);
    out << "mode: " << (p == 0 ? "global" : "p-local p=" + std::to_string(p)) << "\n";
    out << "found: " << yes(R.found) << "\n";
    if (!R.found) {
      out << "reason: " << R.reason << "\n";
      if (p == 0 && modes.size() > 1) continue;
      ok = false;
      break;
    }
    ReductionDetReport det = reduction_determinant_check(f.three, R, o.seed);
    out << "x = " << format_element(R.x) << "\n";
    out << "H1 equal: " << yes(R.h1_equal) << "\n";
    out << "H2 finite index: " << yes(R.h2_finite_index) << "\n";
    out << "quotient = " << invariants_text(R.quotient) << "\n";
    out << "quotient killed by x: " << yes(R.quotient_killed_by_x) << "\n";
    out << "determinant ratio unit: " << yes(det.ok) << "\n";
    ok = ok && R.h1_equal && R.h2_finite_index && R.quotient_killed_by_x && det.ok;
    if (p == 0) break;
  }
  return ok ? 0 : 1;
}

int cmd_dual(const Options& o, std::ostream& out) {
  InstanceFile f = load(o.file);
  const StrictComplex& C = need_strict(f, "dual");
  StrictComplex Cs = dual_complex(C), Css = dual_complex(Cs);
  CohomologyData H = cohomology(C), Hs = cohomology(Cs), Hss = cohomology(Css);
  out << "H(C): H1 = " << invariants_text(H.H1.invariants()) << ", H2 = " << invariants_text(H.H2.invariants())
      << "\n";
  out << "H(C*): H1 = " << invariants_text(Hs.H1.invariants()) << ", H2 = " << invariants_text(Hs.H2.invariants())
      << "\n";
  out << "H(C**): H1 = " << invariants_text(Hss.H1.invariants())
      << ", H2 = " << invariants_text(Hss.H2.invariants()) << "\n";
  const bool reflexive = reflexivity_check(*H.H1_lattice).reflexive();
  const bool same = H.H1.invariants() == Hss.H1.invariants() && H.H2.invariants() == Hss.H2.invariants();
  out << "H1 reflexive: " << yes(reflexive) << "\n";
  out << "double dual invariants match: " << yes(same) << "\n";
  return reflexive && same ? 0 : 1;
}

std::vector<int> parse_group(const std::string& s) {
  std::vector<long> orders;
  for (const auto& t : split(s, ',')) {
    if (t.empty()) continue;
    try {
      orders.push_back(std::stol(t));
    } catch (const std::exception&) {
      throw UsageError("--group: bad factor \"" + t + "\"");
    }
    if (orders.back() < 1) throw UsageError("--group: factors are positive");
  }
  return invariant_factors(orders);
}

int cmd_gen(const Options& o, std::ostream& out) {
  oracle::InstanceSpec spec;
  spec.seed = o.seed;
  spec.group = parse_group(o.group);
  spec.d = o.d;
  if (o.three_term) spec.shape = oracle::Shape::three_term;
  if (o.a > 0) {
    spec.a = static_cast<std::size_t>(o.a);
    spec.x_kind = oracle::XKind::separable;
  }
  oracle::Instance I = oracle::random_instance(spec);
  InstanceFile f;
  f.group = spec.group;
  f.G = I.G;
  f.strict = I.shape == oracle::Shape::strict;
  if (f.strict) f.C = *I.strict;
  else f.three = *I.three;
  f.lambda = I.lambda;
  f.X = I.X;
  f.seed = o.seed;
  f.description = std::string(f.strict ? "strict" : "three-term") + " instance over " + I.G.to_string();
  const std::string text = serialize_instance(f);
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream file(o.out);
    if (!file) throw UsageError("cannot write " + o.out);
    file << text;
  }
  return 0;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  InstanceFile f = load(o.file);
  const StrictComplex& C = need_strict(f, "oracle");
  CohomologyData H = cohomology(C);
  bool ok = true;
  auto row = [&](const std::string& name, const char* verdict) {
    out << name << ": " << verdict << "\n";
    ok = ok && std::string(verdict) != "FAIL";
  };
  const PresentedModule& M = H.H2_presented;
  for (int a = 0; a <= static_cast<int>(M.generators); ++a) {
    if (M.generators > 5) {
      row("fitting a=" + std::to_string(a), "skipped");
      continue;
    }
    const bool eq = oracle::brute_force_fitting(M, a, o.seed) ==
                    oracle::OracleLattice::from_main(fitting_ideal(M, a).lattice());
    row("fitting a=" + std::to_string(a), eq ? "pass" : "FAIL");
  }
  const GLattice& L = *H.H1_lattice;
  for (int a = 1; a <= 2; ++a) {
    const std::string name = "bidual a=" + std::to_string(a);
    if (L.zrank() == 0 || L.zrank() > 6 || a > static_cast<int>(L.zrank())) {
      row(name, "skipped");
      continue;
    }
    auto main = oracle::OracleLattice::from_main(bidual(L, a));
    auto e = main.exponent_over(oracle::wedge_lattice(L, a));
    if (!e) {
      row(name, "FAIL");
      continue;
    }
    mpz_class D;
    mpz_lcm(D.get_mpz_t(), e->get_mpz_t(), mpz_class(f.G.order()).get_mpz_t());
    try {
      row(name, oracle::brute_force_bidual(L, a, D) == main ? "pass" : "FAIL");
    } catch (const std::invalid_argument&) {
      row(name, "skipped");
    }
  }
  LambdaMap lam = lambda_of(f);
  ThetaResult th = theta_det(C, lam);
  auto coords = char_coords(th.u);
  row("integrality of L",
      oracle::integrality_oracle(f.group, coords) == integrality_test(f.G, coords) ? "pass" : "FAIL");
  return ok ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Higher special elements for complexes over Z[G]", "hse"};
  app.require_subcommand(1);
  Options o;

  auto with_file = [&](CLI::App* s) { s->add_option("file", o.file, "instance file")->required(); };
  auto with_x = [&](CLI::App* s) {
    s->add_option("--a", o.a, "exterior degree (defaults to |X|)");
    s->add_option("--x", o.x, "X as basis names of P, e.g. \"b1,b2\"");
  };

  std::map<std::string, std::function<int(const Options&, std::ostream&)>> handlers;
  auto add = [&](const std::string& name, const std::string& help,
                 std::function<int(const Options&, std::ostream&)> h) {
    handlers[name] = std::move(h);
    return app.add_subcommand(name, help);
  };

  auto* coh = add("cohomology", "cohomology groups and character ranks", cmd_cohomology);
  with_file(coh);
  auto* fit = add("fitting", "Fitting ideals of H2", cmd_fitting);
  with_file(fit);
  fit->add_option("--a", o.a, "degree (all when omitted)");
  fit->add_flag("--oracle", o.oracle, "cross-check by brute force");
  fit->add_option("--seed", o.seed);
  auto* eta = add("eta", "higher special element and I(eta)", cmd_eta);
  with_file(eta);
  with_x(eta);
  eta->add_option("--seed", o.seed);
  auto* pr = add("pairing", "the pairing on torsion quotients", cmd_pairing);
  with_file(pr);
  with_x(pr);
  pr->add_flag("--oracle", o.oracle, "cross-check perfectness by enumeration");
  auto* ch = add("check-charels", "Fitting and integrality containments", cmd_charels);
  with_file(ch);
  with_x(ch);
  auto* mrs = add("check-mrs", "descent congruence along a subgroup", cmd_mrs);
  with_file(mrs);
  with_x(mrs);
  mrs->add_option("--subgroup", o.subgroup, "generators of J, e.g. \"g1,g2^2\"");
  auto* red = add("reduce", "reduction of a three-term complex to a strict one", cmd_reduce);
  with_file(red);
  red->add_option("--prime", o.prime, "work p-locally at this prime");
  red->add_option("--seed", o.seed);
  auto* du = add("dual", "duality and reflexivity checks", cmd_dual);
  with_file(du);
  auto* gen = add("gen", "emit a random instance file", cmd_gen);
  gen->add_option("--group", o.group, "cyclic orders, e.g. \"2,2\"");
  gen->add_option("--d", o.d, "rank of P")->check(CLI::Range(1, 8));
  gen->add_option("--a", o.a, "number of separable X elements");
  gen->add_option("--seed", o.seed);
  gen->add_flag("--three-term", o.three_term, "three-term shape");
  gen->add_option("--out", o.out, "output path (stdout when omitted)");
  auto* orc = add("oracle", "compare main-path results against brute force", cmd_oracle);
  with_file(orc);
  orc->add_option("--seed", o.seed);

  std::vector<const char*> argv{"hse"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  const auto subs = app.get_subcommands();
  const std::string name = subs.front()->get_name();
  try {
    std::ostringstream report;
    const int code = handlers.at(name)(o, report);
    out << report.str();
    return code;
  } catch (const InstanceError& e) {
    err << "error " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "precondition failed: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    err << "precondition failed: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace hse
