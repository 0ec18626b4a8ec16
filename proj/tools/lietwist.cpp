// lietwist: checks Hermitian Lie algebras, twisted products and the family catalog.
//
//   lietwist check FILE
//   lietwist lee FILE
//   lietwist twist FILE1 FILE2 RHO_FILE
//   lietwist catalog list
//   lietwist catalog verify --family ID [--samples N] [--seed S]
//   lietwist catalog verify-all [--samples N] [--seed S]
//
// Exit codes: 0 success, 1 a check failed, 2 unreadable or malformed input.

#include "lietwist/catalog.hpp"
#include "lietwist/document.hpp"
#include "lietwist/hermitian.hpp"
#include "lietwist/salamon.hpp"
#include "lietwist/twist.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

using namespace lietwist;

namespace {

enum class Format { text, records };

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

const char* yes_no(bool b) { return b ? "yes" : "no"; }
const char* pass_fail(bool b) { return b ? "PASS" : "FAIL"; }

std::string quote(const std::string& s) {
  if (!s.empty() && s.find_first_of(" \t\"=") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

/// Writes one `key=value ...` line.
class Record {
 public:
  explicit Record(std::ostream& os) : os_(os) {}
  Record& operator()(const std::string& key, const std::string& value) {
    os_ << (first_ ? "" : " ") << key << "=" << quote(value);
    first_ = false;
    return *this;
  }
  ~Record() { os_ << "\n"; }

 private:
  std::ostream& os_;
  bool first_ = true;
};

Record record(std::ostream& os) { return Record(os); }

struct Labels {
  std::size_t offset = 0;
  std::string e(std::size_t i) const { return "e" + std::to_string(i + offset + 1); }
  std::string vec(const Vec& v) const { return relabel(KForm::covector(v), offset).str(); }
  std::string form(const KForm& f) const { return relabel(f, offset).str(); }
};

struct CheckLine {
  std::string name;
  bool ok;
  std::vector<std::string> details;
};

std::vector<CheckLine> run_checks(const InputDocument& doc) {
  Labels lb{doc.offset()};
  const LieAlgebra& L = doc.algebra();
  const Endo& J = doc.complex_structure();
  const Metric& g = doc.metric();
  std::vector<CheckLine> out;

  CheckLine jac{"jacobi", true, {}};
  for (const auto& d : jacobi_defect(L)) {
    jac.ok = false;
    jac.details.push_back("(" + lb.e(d.i) + ", " + lb.e(d.j) + ", " + lb.e(d.k) + ") -> " + lb.vec(d.defect));
  }
  out.push_back(jac);

  bool complex = is_almost_complex(J);
  out.push_back({"almost-complex", complex, complex ? std::vector<std::string>{} : std::vector<std::string>{"J^2 != -I"}});

  CheckLine integ{"integrable", complex, {}};
  if (complex) {
    for (const auto& [ij, v] : nijenhuis(L, J).defects()) {
      integ.ok = false;
      integ.details.push_back("N(" + lb.e(ij.first) + ", " + lb.e(ij.second) + ") = " + lb.vec(v));
    }
  } else {
    integ.details.push_back("needs an almost complex structure");
  }
  out.push_back(integ);

  bool posdef = g.positive_definite();
  out.push_back({"positive-definite", posdef, posdef ? std::vector<std::string>{} : std::vector<std::string>{"metric is not positive-definite"}});

  bool invariant = J.transpose() * g.matrix() * J == g.matrix();
  out.push_back({"J-invariant", invariant, invariant ? std::vector<std::string>{} : std::vector<std::string>{"g(Jx, Jy) != g(x, y)"}});
  return out;
}

bool print_checks(const std::vector<CheckLine>& checks, Format fmt, std::ostream& os) {
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.ok;
    if (fmt == Format::records) {
      record(os)("check", c.name)("status", pass_fail(c.ok));
      for (const auto& d : c.details) record(os)("defect", c.name)("detail", d);
    } else {
      os << std::left << std::setw(18) << c.name << pass_fail(c.ok) << "\n";
      for (const auto& d : c.details) os << "    " << d << "\n";
    }
  }
  if (fmt == Format::records) record(os)("result", pass_fail(all));
  else os << "result: " << pass_fail(all) << "\n";
  return all;
}

void header(Format fmt, const std::string& command) {
  if (fmt == Format::records) record(std::cout)("records", "1")("command", command);
}

int cmd_check(const std::string& file, Format fmt) {
  auto doc = InputDocument::load(file);
  header(fmt, "check");
  return print_checks(run_checks(doc), fmt, std::cout) ? kOk : kCheckFailed;
}

void print_flags(const std::string& theta, const ClassFlags& f, Format fmt) {
  if (fmt == Format::records) {
    record(std::cout)("theta", theta)("balanced", yes_no(f.balanced))("lcb", yes_no(f.lcb))("lck", yes_no(f.lck))("kahler", yes_no(f.kahler));
  } else {
    std::cout << "theta = " << theta << "; balanced=" << yes_no(f.balanced) << " lcb=" << yes_no(f.lcb) << " lck=" << yes_no(f.lck)
              << " kahler=" << yes_no(f.kahler) << "\n";
  }
}

int cmd_lee(const std::string& file, Format fmt) {
  auto doc = InputDocument::load(file);
  header(fmt, "lee");
  auto checks = run_checks(doc);
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.ok;
  if (!ok) {
    print_checks(checks, fmt, std::cout);
    return kCheckFailed;
  }
  auto h = doc.hermitian();
  print_flags(Labels{doc.offset()}.form(lee_form(h)), classify(h), fmt);
  return kOk;
}

int cmd_twist(const std::string& f1, const std::string& f2, const std::string& frho, Format fmt) {
  auto d1 = InputDocument::load(f1);
  auto d2 = InputDocument::load(f2);
  auto dr = InputDocument::load(frho);
  header(fmt, "twist");
  for (const auto* d : {&d1, &d2}) {
    auto checks = run_checks(*d);
    bool ok = true;
    for (const auto& c : checks) ok = ok && c.ok;
    if (!ok) {
      if (fmt == Format::text) std::cout << "factor " << d->source() << " is not Hermitian:\n";
      print_checks(checks, fmt, std::cout);
      return kCheckFailed;
    }
  }
  auto h1 = d1.hermitian(), h2 = d2.hermitian();
  const std::size_t m = h1.dim(), n = h2.dim();
  Representation rho1(h1.algebra(), h2.algebra(), dr.rho(1, m, n, d1.offset()));
  Representation rho2(h2.algebra(), h1.algebra(), dr.rho(2, n, m, d2.offset()));
  TwistData td(h1, h2, rho1, rho2);
  HermitianStructure product = [&] {
    try {
      return build_product(td);
    } catch (const TwistError& e) {
      if (e.defects().empty()) throw;
      for (const auto& d : e.defects()) {
        if (fmt == Format::records) record(std::cout)("defect", to_string(d.kind))("detail", d.str());
        else std::cout << "defect: " << d.str() << "\n";
      }
      throw;
    }
  }();
  KForm via = lee_via_theorem(td), direct = lee_form(product);
  bool agree = via == direct;
  auto flags = classify(product);
  if (fmt == Format::records) {
    record(std::cout)("product", print_salamon(product.algebra()));
    record(std::cout)("theta_formula", via.str())("theta_direct", direct.str())("agree", yes_no(agree));
  } else {
    std::cout << "product = " << print_salamon(product.algebra()) << "\n";
    std::cout << "theta (product formula) = " << via.str() << "\n";
    std::cout << "theta (direct)          = " << direct.str() << "\n";
    std::cout << "agree = " << yes_no(agree) << "\n";
  }
  print_flags(direct.str(), flags, fmt);
  if (!agree) {
    std::cerr << "error: product formula and direct Lee form differ\n";
    return kCheckFailed;
  }
  return kOk;
}

std::string verdicts(const SampleVerdict& s) {
  std::ostringstream os;
  os << "jacobi=" << yes_no(s.jacobi) << " integrable=" << yes_no(s.integrable) << " posdef=" << yes_no(s.posdef)
     << " balanced=" << yes_no(s.balanced) << " lcb=" << yes_no(s.lcb) << " lck=" << yes_no(s.lck) << " kahler=" << yes_no(s.kahler);
  return os.str();
}

void print_report(const Report& r, Format fmt, bool every_sample) {
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto& s = r.samples[i];
    if (!every_sample && s.pass()) continue;
    if (fmt == Format::records) {
      record(std::cout)("kind", "sample")("id", r.family)("variant", to_string(r.variant))("n", std::to_string(i + 1))
          ("jacobi", yes_no(s.jacobi))("integrable", yes_no(s.integrable))("posdef", yes_no(s.posdef))("balanced", yes_no(s.balanced))
          ("lcb", yes_no(s.lcb))("lck", yes_no(s.lck))("kahler", yes_no(s.kahler))("binding", s.binding.str())("note", s.note);
    } else {
      std::cout << "  " << to_string(r.variant) << " sample " << i + 1 << ": " << pass_fail(s.pass()) << " " << verdicts(s) << "\n"
                << "      at " << s.binding.str() << (s.note.empty() ? "" : "; " + s.note) << "\n";
    }
  }
}

std::string score(const Report& r) { return std::to_string(r.passed()) + "/" + std::to_string(r.accepted()); }

void print_outcome(const FamilyOutcome& o, Format fmt, bool every_sample) {
  const Report& p = o.printed;
  if (fmt == Format::records) {
    Record rec(std::cout);
    rec("kind", "family")("id", p.family)("status", to_string(o.status()))("printed", score(p))("draws", std::to_string(p.attempted));
    if (o.probe) rec("probe_e12", score(*o.probe));
    if (o.erratum) rec("erratum", score(*o.erratum));
  } else {
    std::cout << std::left << std::setw(11) << to_string(o.status()) << std::setw(20) << p.family << " printed " << score(p);
    if (o.probe) std::cout << "; probe-e12 " << score(*o.probe);
    if (o.erratum) std::cout << "; erratum " << score(*o.erratum) << " (informational)";
    std::cout << "  [" << p.attempted << " draws]\n";
  }
  print_report(p, fmt, every_sample);
  if (o.probe) print_report(*o.probe, fmt, every_sample);
  if (o.erratum && every_sample) print_report(*o.erratum, fmt, true);
}

int cmd_catalog_list(const Catalog& c, Format fmt) {
  header(fmt, "catalog list");
  for (const auto& f : c.families()) {
    if (fmt == Format::records) record(std::cout)("id", f.id())("title", f.title());
    else std::cout << std::left << std::setw(20) << f.id() << " " << f.title() << "\n";
  }
  return kOk;
}

int cmd_catalog_verify(const Catalog& c, const std::string& id, std::size_t samples, std::uint64_t seed, Format fmt) {
  const Family& f = c.find(id);
  header(fmt, "catalog verify");
  auto o = verify_family(f, samples, seed);
  print_outcome(o, fmt, true);
  return o.status() == Status::fail ? kCheckFailed : kOk;
}

int cmd_catalog_verify_all(const Catalog& c, std::size_t samples, std::uint64_t seed, Format fmt) {
  header(fmt, "catalog verify-all");
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& f : c.families()) {
    auto o = verify_family(f, samples, seed);
    ++counts[static_cast<int>(o.status())];
    print_outcome(o, fmt, false);
  }
  bool ok = counts[2] == 0;
  if (fmt == Format::records) {
    record(std::cout)("kind", "summary")("families", std::to_string(c.size()))("pass", std::to_string(counts[0]))
        ("pass_probe", std::to_string(counts[1]))("fail", std::to_string(counts[2]))("result", pass_fail(ok));
  } else {
    std::cout << "families: " << c.size() << "  PASS " << counts[0] << "  PASS-PROBE " << counts[1] << "  FAIL " << counts[2] << "\n"
              << "result: " << pass_fail(ok) << "\n";
  }
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian Lie algebras, twisted products and the balanced family catalog"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format: text or records")->check(CLI::IsMember({"text", "records"}));

  std::string file, file2, rho_file;
  auto* check = app.add_subcommand("check", "run Jacobi, integrability and metric checks on a document");
  check->add_option("file", file, "input document")->required();
  auto* lee = app.add_subcommand("lee", "print the Lee form and the Hermitian class");
  lee->add_option("file", file, "input document")->required();
  auto* twist = app.add_subcommand("twist", "build a twisted product from two factors and a rho document");
  twist->add_option("first", file, "first factor")->required();
  twist->add_option("second", file2, "second factor")->required();
  twist->add_option("rho", rho_file, "document with [rho1] and [rho2]")->required();

  std::string catalog_path = LIETWIST_DEFAULT_CATALOG, family;
  std::size_t samples = 10;
  std::uint64_t seed = 1;
  auto* catalog = app.add_subcommand("catalog", "list or verify catalog families");
  catalog->add_option("--catalog", catalog_path, "family data file");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "print family ids");
  auto* verify_one = catalog->add_subcommand("verify", "verify one family");
  verify_one->add_option("--family", family, "family id")->required();
  for (auto* sub : {verify_one, catalog->add_subcommand("verify-all", "verify every family")}) {
    sub->add_option("--samples", samples, "samples per family")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "sampling seed");
  }
  auto* verify_all = catalog->get_subcommand("verify-all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  Format fmt = format == "records" ? Format::records : Format::text;
  try {
    if (*check) return cmd_check(file, fmt);
    if (*lee) return cmd_lee(file, fmt);
    if (*twist) return cmd_twist(file, file2, rho_file, fmt);
    Catalog c = Catalog::load(catalog_path);
    if (*list) return cmd_catalog_list(c, fmt);
    if (*verify_one) return cmd_catalog_verify(c, family, samples, seed, fmt);
    if (*verify_all) return cmd_catalog_verify_all(c, samples, seed, fmt);
  } catch (const TwistError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
