// Acceptance checks: `acceptance --criterion N` prints one PASS/FAIL line and
// exits non-zero on FAIL. Without arguments every criterion runs.
#include "lietwist/document.hpp"
#include "properties.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>

using namespace lietwist;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
  std::vector<std::string> info;
};

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string count(std::size_t k, std::size_t n) { return std::to_string(k) + "/" + std::to_string(n); }

/// A random valid twist, cycling through every ansatz.
std::vector<TwistData> twist_corpus(std::uint64_t seed, std::size_t n, TwistSampling opts = {}) {
  Rng rng(seed);
  std::vector<TwistData> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_twist_data(rng, all_ansatze[i % std::size(all_ansatze)], opts));
  return out;
}

std::vector<TwistData> mixed_corpus() {
  auto a = twist_corpus(101, 50), b = twist_corpus(202, 50, TwistSampling{true});
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Outcome criterion1() {
  auto doc = InputDocument::parse(
      "[algebra]\nbasis = e3..e6\nstructure = (0, -34, -35, 0)\n"
      "[complex]\ne3 -> e6\ne4 -> e5\n[metric]\nomega = sigma e36 + e45\n[params]\nsigma = 3\n",
      "rr31");
  auto h = doc.hermitian();
  KForm theta = relabel(lee_form(h), doc.offset());
  KForm expected = parse_form("-2 e3", 6, 1);
  auto flags = classify(h);
  bool ok = theta == expected && flags.lcb && flags.lck && !flags.balanced;
  return {ok, "theta = " + theta.str() + " (expected -2 e3)", {}};
}

Outcome criterion2() {
  std::size_t lee = 0, flags = 0, n = 0;
  std::string first;
  for (const auto& td : mixed_corpus()) {
    ++n;
    auto h = build_product(td);
    bool l = lee_via_theorem(td) == lee_form(h);
    auto t = balanced_lcb_test(td);
    auto c = classify(h);
    bool f = t.balanced == c.balanced && t.lcb == c.lcb;
    lee += l;
    flags += f;
    if ((!l || !f) && first.empty()) first = print_salamon(h.algebra());
  }
  std::string detail = "Lee form " + count(lee, n) + ", balanced/LCB flags " + count(flags, n);
  if (!first.empty()) detail += "; first mismatch on " + first;
  return {lee == n && flags == n, detail, {}};
}

Outcome criterion3() {
  std::size_t literal = 0, full = 0, dw = 0, n = 0;
  for (const auto& td : mixed_corpus()) {
    ++n;
    auto h = build_product(td);
    Connection lc = levi_civita(h.algebra(), h.metric());
    literal += product_connection(td) == lc;
    full += product_connection_full(td) == lc;
    dw += product_dw(td) == ce_d(h.algebra(), fundamental_form(h));
  }
  return {literal == n,
          "product connection formula agrees with Levi-Civita on " + count(literal, n),
          {"with normal components added: " + count(full, n), "d omega formula agrees with ce_d: " + count(dw, n)}};
}

Outcome criterion4() {
  std::string cmd = std::string(LIETWIST_CLI_PATH) + " --format records catalog verify-all --samples 10 --seed 1 2>&1";
  auto start = std::chrono::steady_clock::now();
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {false, "could not start the CLI", {}};
  std::string out;
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, k);
  int status = pclose(p);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

  std::smatch m;
  std::string summary = "no summary record";
  if (std::regex_search(out, m, std::regex("kind=summary[^\n]*"))) summary = m.str();
  std::vector<std::string> info;
  std::istringstream lines(out);
  for (std::string line; std::getline(lines, line);) {
    if (line.find("kind=family") != std::string::npos && line.find("status=FAIL") != std::string::npos) info.push_back(line);
  }
  std::ostringstream d;
  d << "exit " << code << ", " << static_cast<int>(secs) << " s; " << summary;
  return {code == 0 && secs < 60, d.str(), info};
}

Outcome criterion5() {
  Rng rng(505);
  const TwistAnsatz kahler_factors[] = {TwistAnsatz::r2_r2_rho1, TwistAnsatz::r2_r2_rho2, TwistAnsatz::aff_r2,
                                        TwistAnsatz::r2_r4_rho1, TwistAnsatz::r2_r4_rho2};
  std::size_t skew_ok = 0, skew_n = 0, other_ok = 0, other_n = 0;
  for (std::size_t i = 0; skew_n < 20; ++i) {
    auto td = random_twist_data(rng, kahler_factors[i % std::size(kahler_factors)], TwistSampling{true});
    auto h = build_product(td);
    ++skew_n;
    skew_ok += kahler_test(td) && ce_d(h.algebra(), fundamental_form(h)).is_zero();
  }
  for (std::size_t i = 0; other_n < 20; ++i) {
    auto td = random_twist_data(rng, kahler_factors[i % std::size(kahler_factors)]);
    if (kahler_test(td)) continue;
    auto h = build_product(td);
    ++other_n;
    other_ok += !ce_d(h.algebra(), fundamental_form(h)).is_zero();
  }
  return {skew_ok == skew_n && other_ok == other_n,
          "skew-adjoint twists Kahler " + count(skew_ok, skew_n) + ", non-skew twists not Kahler " + count(other_ok, other_n),
          {}};
}

std::vector<Rational> diagonal(Rng& rng, std::size_t len, bool trace_zero) {
  for (;;) {
    std::vector<Rational> d(len);
    Rational t;
    for (auto& x : d) t += (x = rng.rational());
    if (trace_zero) {
      d.back() -= t;
      return d;
    }
    if (!t.is_zero()) return d;
  }
}

/// R^{2p} x R^{2q} with exactly one of rho1, rho2 nonzero.
TwistData random_2p2q(Rng& rng, bool trace_zero) {
  std::size_t p = static_cast<std::size_t>(rng.uniform(1, 3)), q = static_cast<std::size_t>(rng.uniform(1, 3));
  bool first = rng.coin();
  auto lists = [&](std::size_t count, std::size_t len, bool live, bool tz) {
    std::vector<std::vector<Rational>> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(live ? diagonal(rng, len, tz) : std::vector<Rational>(len));
    return out;
  };
  auto A = lists(2 * p, q, first, trace_zero), B = lists(2 * p, q, first, false);
  auto C = lists(2 * q, p, !first, trace_zero), D = lists(2 * q, p, !first, false);
  return build_example_2p2q(p, q, A, B, C, D, trace_zero);
}

Outcome criterion6() {
  Rng rng(606);
  std::size_t balanced = 0, lcb_only = 0;
  for (int i = 0; i < 20; ++i) {
    auto td = random_2p2q(rng, true);
    auto c = classify(build_product(td));
    balanced += c.balanced && balanced_lcb_test(td).balanced;
  }
  for (int i = 0; i < 20; ++i) {
    auto td = random_2p2q(rng, false);
    auto c = classify(build_product(td));
    auto t = balanced_lcb_test(td);
    lcb_only += c.lcb && !c.balanced && t.lcb && !t.balanced;
  }
  return {balanced == 20 && lcb_only == 20,
          "trace-zero instances balanced " + count(balanced, 20) + ", nonzero-trace instances LCB and not balanced " + count(lcb_only, 20),
          {}};
}

Outcome criterion7() {
  Outcome o{true, "", {}};
  std::size_t total = 0, suites = 0;
  std::uint64_t seed = 700;
  for (const auto& suite : props::all_suites()) {
    auto r = suite(seed++);
    ++suites;
    total += r.cases;
    bool ok = r.ok();
    o.pass = o.pass && ok;
    std::string line = std::string(verdict(ok)) + " " + r.name + ": " + std::to_string(r.cases) + " cases";
    if (r.failures) line += ", " + std::to_string(r.failures) + " failed, first: " + r.first_failure;
    o.info.push_back(line);
  }
  o.detail = std::to_string(suites) + " property suites, " + std::to_string(total) + " cases";
  return o;
}

bool has_kind(const std::vector<Defect>& d, std::initializer_list<DefectKind> kinds) {
  for (const auto& x : d)
    for (auto k : kinds)
      if (x.kind == k) return true;
  return false;
}

std::vector<Defect> gate_defects(const TwistData& td) {
  try {
    build_product(td);
  } catch (const TwistError& e) {
    return e.defects();
  }
  return {};
}

/// Flips the sign of term `t` of slot `k` in a Salamon string; empty when
/// the slot has fewer terms.
std::string flip_term(const std::string& structure, std::size_t k, std::size_t t) {
  std::size_t begin = structure.find('(') + 1;
  for (std::size_t s = 0; s < k; ++s) begin = structure.find(',', begin) + 1;
  std::size_t end = structure.find_first_of(",)", begin);
  std::vector<std::size_t> starts;
  int depth = 0;
  char prev = '(';
  for (std::size_t i = begin; i < end; ++i) {
    char c = structure[i];
    if (c == ' ') continue;
    if (depth == 0 && (starts.empty() || ((c == '+' || c == '-') && !std::strchr("(*/^+-", prev)))) starts.push_back(i);
    if (c == '(') ++depth;
    if (c == ')') --depth;
    prev = c;
  }
  if (t >= starts.size()) return {};
  std::size_t at = starts[t];
  std::size_t stop = t + 1 < starts.size() ? starts[t + 1] : end;
  std::string term = detail::trim(structure.substr(at, stop - at));
  if (term == "0") return {};
  std::string flipped;
  if (term[0] == '-') flipped = (t ? "+" : "") + term.substr(1);
  else if (term[0] == '+') flipped = "-" + term.substr(1);
  else flipped = "-" + term;
  return structure.substr(0, at) + flipped + (stop == end ? "" : " ") + structure.substr(stop);
}

/// A mutant that verifies at every draw is a valid family, not a defect.
/// Confirmed with the trace-formula Lee oracle before it is set aside.
bool equivalent_mutant(const Family& m, const Report& r) {
  for (const auto& s : r.samples) {
    auto h = m.instantiate(s.binding);
    if (!props::lee_trace_oracle(h).is_zero() || !jacobi_defect(h.algebra()).empty()) return false;
  }
  return true;
}

Outcome criterion8() {
  std::size_t sign_n = 0, sign_ok = 0, equivalent = 0;
  std::vector<std::string> info;
  for (const auto& f : props::catalog().families()) {
    if (f.builder() != Builder::none || !verify(f, 10, 8).pass()) continue;
    for (std::size_t k = 0; k < f.dim(); ++k) {
      for (std::size_t t = 0;; ++t) {
        std::string flipped = flip_term(f.field("structure"), k, t);
        if (flipped.empty()) break;
        Family mutant = f.with_field("structure", flipped);
        Report r = verify(mutant, 10, 8);
        ++sign_n;
        bool caught = std::any_of(r.samples.begin(), r.samples.end(), [](const SampleVerdict& v) { return !v.pass(); });
        if (caught) {
          ++sign_ok;
        } else if (equivalent_mutant(mutant, r)) {
          ++equivalent;
          info.push_back("equivalent mutant, valid at every draw: " + f.id() + " -> " + flipped);
        } else {
          info.push_back("undetected sign flip: " + f.id() + " -> " + flipped);
        }
      }
    }
  }

  Rng rng(808);
  auto plane = abelian_factor(1);
  auto aff = HermitianStructure(parse_salamon("(-12,0)"), standard_complex(1), Metric::identity(2));
  auto rr31 = HermitianStructure(parse_salamon("(0,-12,-13,0)"),
                                 Matrix::from_rows({{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}),
                                 Metric::identity(4));
  std::size_t deriv_ok = 0, hom_ok = 0, compat_ok = 0;
  for (int i = 0; i < 20; ++i) {
    std::vector<Endo> images{props::random_matrix(rng, 4), props::random_matrix(rng, 4)};
    while (check_representation(Representation(plane.algebra(), rr31.algebra(), images)).empty()) images[0] = props::random_matrix(rng, 4);
    TwistData td(plane, rr31, Representation(plane.algebra(), rr31.algebra(), images), Representation::zero(rr31.algebra(), plane.algebra()));
    deriv_ok += has_kind(gate_defects(td), {DefectKind::derivation});
  }
  for (int i = 0; i < 20; ++i) {
    std::vector<Endo> images{complex_scalar(rng.nonzero(), rng.rational()), complex_scalar(rng.rational(), rng.rational())};
    TwistData td(aff, plane, Representation(aff.algebra(), plane.algebra(), images), Representation::zero(plane.algebra(), aff.algebra()));
    hom_ok += has_kind(gate_defects(td), {DefectKind::homomorphism});
  }
  for (int i = 0; i < 20; ++i) {
    std::vector<Endo> r1{complex_scalar(rng.nonzero(), rng.rational()), Matrix(2, 2)};
    std::vector<Endo> r2{complex_scalar(rng.nonzero(), rng.rational()), Matrix(2, 2)};
    TwistData td(plane, plane, Representation(plane.algebra(), plane.algebra(), r1), Representation(plane.algebra(), plane.algebra(), r2));
    auto d = gate_defects(td);
    compat_ok += has_kind(d, {DefectKind::eq1, DefectKind::eq2}) && !has_kind(d, {DefectKind::derivation, DefectKind::homomorphism});
  }
  std::ostringstream d;
  d << "sign flips caught " << count(sign_ok, sign_n - equivalent) << " (" << equivalent << " equivalent), non-derivations " << count(deriv_ok, 20)
    << ", non-homomorphisms " << count(hom_ok, 20) << ", incompatible couples " << count(compat_ok, 20);
  return {sign_ok > 0 && sign_ok + equivalent == sign_n && deriv_ok == 20 && hom_ok == 20 && compat_ok == 20, d.str(), info};
}

Outcome run(int n) {
  switch (n) {
    case 1: return criterion1();
    case 2: return criterion2();
    case 3: return criterion3();
    case 4: return criterion4();
    case 5: return criterion5();
    case 6: return criterion6();
    case 7: return criterion7();
    case 8: return criterion8();
  }
  throw std::invalid_argument("no criterion " + std::to_string(n));
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  if (argc == 3 && std::string(argv[1]) == "--criterion") {
    which.push_back(std::stoi(argv[2]));
  } else if (argc == 1) {
    for (int i = 1; i <= 8; ++i) which.push_back(i);
  } else {
    std::cerr << "usage: acceptance [--criterion N]\n";
    return 2;
  }
  bool all = true;
  for (int n : which) {
    Outcome o;
    try {
      o = run(n);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what(), {}};
    }
    std::cout << "criterion " << n << ": " << verdict(o.pass) << " " << o.detail << "\n";
    for (const auto& line : o.info) std::cout << "  " << line << "\n";
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
