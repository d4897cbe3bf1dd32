#include <algorithm>
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "latticelab/latticelab.h"

namespace {

using nlohmann::json;

// Raised on a failing C API call; carries the status code.
struct DomainFailure {
  int code;
  std::string message;
};

struct UsageFailure {
  std::string message;
};

void check(int status) {
  if (status != LL_OK) throw DomainFailure{status, ll_last_error()};
}

json take_json(char* raw) {
  std::unique_ptr<char, decltype(&ll_string_free)> holder(raw, ll_string_free);
  return json::parse(raw);
}

using LatticePtr = std::unique_ptr<ll_lattice, decltype(&ll_lattice_free)>;
using FormPtr = std::unique_ptr<ll_form, decltype(&ll_form_free)>;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageFailure{"cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct LatticeInput {
  std::string gram, file, name;
  long long scale = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--gram", gram, "Gram matrix as row-major bracketed list, e.g. [[2,-1],[-1,2]]");
    cmd->add_option("--file", file, "JSON file holding a Gram matrix");
    cmd->add_option("--name", name, "registry lattice, e.g. E6 or E6+A1");
    cmd->add_option("--scale", scale, "scale factor for --name");
  }

  LatticePtr load() const {
    const int given = !gram.empty() + !file.empty() + !name.empty();
    if (given != 1) throw UsageFailure{"give exactly one of --gram, --file, --name"};
    ll_lattice* out = nullptr;
    if (!name.empty())
      check(ll_lattice_named(name.c_str(), scale, &out));
    else
      check(ll_lattice_from_json((gram.empty() ? read_file(file) : gram).c_str(), &out));
    return LatticePtr(out, ll_lattice_free);
  }
};

// A form argument is a genus symbol, inline JSON, or @path to a JSON file.
FormPtr load_form(const std::string& text) {
  const std::string body = (!text.empty() && text[0] == '@') ? read_file(text.substr(1)) : text;
  ll_form* out = nullptr;
  check(ll_form_parse(body.c_str(), &out));
  return FormPtr(out, ll_form_free);
}

std::string symbol_of(const ll_form* f) {
  char* raw = nullptr;
  check(ll_form_symbol(f, &raw));
  std::string s(raw);
  ll_string_free(raw);
  return s;
}

std::pair<int, int> parse_pair(const std::string& text, const char* what) {
  int a = 0, b = 0;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> a >> comma >> b) || comma != ',' || !in.eof())
    throw UsageFailure{std::string(what) + " must look like p,m"};
  return {a, b};
}

std::vector<long long> parse_list(const std::string& text, std::size_t expect, const char* what) {
  std::vector<long long> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageFailure{std::string(what) + ": bad integer '" + item + "'"};
    }
  }
  if (expect && out.size() != expect)
    throw UsageFailure{std::string(what) + " needs " + std::to_string(expect) + " entries"};
  return out;
}

std::string opt_text(const json& v) { return v.is_null() ? "-" : v.dump(); }

void print_report(const json& doc, bool with_numbers) {
  std::printf("table %s, root %s\n", doc["table"].get<std::string>().c_str(), doc["root"].get<std::string>().c_str());
  for (const auto& r : doc["rows"]) {
    const bool pass = r["criterion_pass"].get<bool>();
    std::printf("%3d  %-16s %7lld  %-28s %s", r["row"].get<int>(), r["group"].get<std::string>().c_str(),
                r["order"].get<long long>(), r["qK"].get<std::string>().c_str(), pass ? "PASS" : "fail");
    if (!pass) {
      if (r["failed_condition"].is_null())
        std::printf("  [%s]", r["reason"].get<std::string>().c_str());
      else
        std::printf("  condition %d  [%s]", r["failed_condition"].get<int>(), r["reason"].get<std::string>().c_str());
    }
    std::printf("\n");
    for (const auto& c : r["classes"]) {
      std::printf("       T = %-14s glue %lld", c["T"].get<std::string>().c_str(), c["glue_index"].get<long long>());
      if (with_numbers) {
        if (c["embedding_count"].is_null())
          std::printf("  embeddings %s", c["embedding_note"].get<std::string>().c_str());
        else
          std::printf("  embeddings %d", c["embedding_count"].get<int>());
        if (!c["nonsymplectic_order"].is_null())
          std::printf("  nbar %d  |G| %lld", c["nonsymplectic_order"].get<int>(), c["total_order"].get<long long>());
      }
      std::printf("\n");
    }
  }
  std::printf("passing rows:");
  for (const auto& p : doc["pass_rows"]) std::printf(" %d", p.get<int>());
  std::printf("\n");
}

json cubic_report(int row, int threads) {
  char* raw = nullptr;
  if (row != 0 || threads <= 1) {
    check(ll_cubic_report_json(row, &raw));
    return take_json(raw);
  }
  // rows are independent; fetch them concurrently and keep table order
  check(ll_cubic_report_json(1, &raw));
  json doc = take_json(raw);
  constexpr int kRows = 15;
  std::vector<std::future<json>> jobs;
  for (int r = 2; r <= kRows; ++r)
    jobs.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, [r] {
      char* part = nullptr;
      check(ll_cubic_report_json(r, &part));
      return take_json(part);
    }));
  for (auto& j : jobs) {
    json part = j.get();
    for (auto& r : part["rows"]) doc["rows"].push_back(r);
    for (auto& p : part["pass_rows"]) doc["pass_rows"].push_back(p);
  }
  return doc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latticelab: even lattices, discriminant forms and Leech-pair case analysis"};
  app.require_subcommand(1);
  bool as_json = false;
  int threads = 1;
  app.add_flag("--json", as_json, "machine-readable output")->group("Output");
  app.add_option("--threads", threads, "parallel row evaluation for report commands")->check(CLI::PositiveNumber);

  std::function<void()> action;
  auto out_json = [&](const json& doc) { std::cout << doc.dump(2) << "\n"; };

  // lattice
  auto* lattice = app.add_subcommand("lattice", "lattice invariants")->require_subcommand(1);
  LatticeInput info_in, sv_in;
  auto* info = lattice->add_subcommand("info", "rank, signature, determinant, parity, discriminant form");
  info_in.attach(info);
  info->callback([&] {
    action = [&] {
      auto L = info_in.load();
      char* raw = nullptr;
      check(ll_lattice_info_json(L.get(), &raw));
      json doc = take_json(raw);
      if (as_json) return out_json(doc);
      std::cout << "rank " << doc["rank"] << ", signature (" << doc["signature"][0] << "," << doc["signature"][1]
                << "), det " << doc["det"].get<std::string>() << ", " << (doc["even"].get<bool>() ? "even" : "odd")
                << "\n";
      if (doc.contains("discriminant_form"))
        std::cout << "discriminant form " << doc["discriminant_form"].get<std::string>() << "\n";
    };
  });
  long long sv_norm = 0;
  auto* shortvec = lattice->add_subcommand("shortvec", "vectors of a given norm (one per +-pair)");
  sv_in.attach(shortvec);
  shortvec->add_option("--norm", sv_norm, "target norm v.G.v")->required();
  shortvec->callback([&] {
    action = [&] {
      auto L = sv_in.load();
      char* raw = nullptr;
      check(ll_lattice_short_vectors_json(L.get(), sv_norm, &raw));
      json doc = take_json(raw);
      if (as_json) return out_json(doc);
      std::cout << doc["count"] << " vector(s) of norm " << sv_norm << "\n";
      for (const auto& v : doc["vectors"]) std::cout << "  " << v.dump() << "\n";
    };
  });

  // rank2
  auto* rank2 = app.add_subcommand("rank2", "binary even forms")->require_subcommand(1);
  long long det = 0;
  bool neg = false, even = false;
  auto* r2enum = rank2->add_subcommand("enum", "reduced forms of a determinant");
  r2enum->add_option("--det", det, "determinant ac - b^2")->required();
  r2enum->add_flag("--neg", neg, "negative definite");
  r2enum->add_flag("--even", even, "even forms only");
  r2enum->callback([&] {
    action = [&] {
      char* raw = nullptr;
      check(ll_rank2_enumerate_json(det, even ? 1 : 0, neg ? -1 : 1, &raw));
      json doc = take_json(raw);
      if (as_json) return out_json(doc);
      for (const auto& f : doc["forms"]) std::cout << f["form"].get<std::string>() << "\n";
    };
  });
  std::string reduce_abc;
  auto* r2red = rank2->add_subcommand("reduce", "reduced representative of [[a,b],[b,c]]");
  r2red->add_option("--form", reduce_abc, "a,b,c")->required();
  r2red->callback([&] {
    action = [&] {
      const auto abc = parse_list(reduce_abc, 3, "--form");
      char* raw = nullptr;
      check(ll_rank2_reduce_json(abc[0], abc[1], abc[2], 1, &raw));
      json doc = take_json(raw);
      if (as_json) return out_json(doc);
      std::cout << doc["form"].get<std::string>() << "\n";
    };
  });
  std::string auto_form;
  auto* r2aut = rank2->add_subcommand("autorders", "orders of isometries of a binary form");
  r2aut->add_option("--form", auto_form, "e.g. \"-(6^3 6)\"")->required();
  r2aut->callback([&] {
    action = [&] {
      char* raw = nullptr;
      check(ll_rank2_automorphism_orders_json(auto_form.c_str(), &raw));
      json doc = take_json(raw);
      if (as_json) return out_json(doc);
      std::cout << doc["form"].get<std::string>() << ": |O| = " << doc["group_order"] << ", element orders "
                << doc["element_orders"].dump() << "\n";
    };
  });

  // dform
  auto* dform = app.add_subcommand("dform", "finite quadratic forms")->require_subcommand(1);
  LatticeInput of_in;
  auto* dof = dform->add_subcommand("of", "discriminant form of a lattice");
  of_in.attach(dof);
  dof->callback([&] {
    action = [&] {
      auto L = of_in.load();
      ll_form* f = nullptr;
      check(ll_lattice_discriminant_form(L.get(), &f));
      FormPtr q(f, ll_form_free);
      char* raw = nullptr;
      check(ll_form_to_json(q.get(), &raw));
      json doc = take_json(raw);
      if (as_json) return out_json(doc);
      std::cout << doc["symbol"].get<std::string>() << "\n";
    };
  });
  std::string sym_form;
  auto* dsym = dform->add_subcommand("symbol", "canonical genus symbol of a form");
  dsym->add_option("--form", sym_form, "symbol, JSON form, or @file")->required();
  dsym->callback([&] {
    action = [&] {
      auto q = load_form(sym_form);
      char* raw = nullptr;
      check(ll_form_to_json(q.get(), &raw));
      json doc = take_json(raw);
      int sig = 0;
      check(ll_form_signature_mod8(q.get(), &sig));
      doc["signature_mod8"] = sig;
      if (as_json) return out_json(doc);
      std::cout << doc["symbol"].get<std::string>() << "  (order " << doc["order"] << ", signature " << sig
                << " mod 8)\n";
    };
  });
  std::string iso_a, iso_b;
  auto* diso = dform->add_subcommand("iso", "isomorphism test");
  diso->add_option("--form", iso_a, "first form")->required();
  diso->add_option("--other", iso_b, "second form")->required();
  diso->callback([&] {
    action = [&] {
      auto a = load_form(iso_a), b = load_form(iso_b);
      int iso = 0;
      check(ll_form_isomorphic(a.get(), b.get(), &iso));
      json doc = {{"isomorphic", iso == 1}, {"first", symbol_of(a.get())}, {"second", symbol_of(b.get())}};
      if (as_json) return out_json(doc);
      std::cout << (iso ? "isomorphic" : "not isomorphic") << "\n";
    };
  });

  // glue
  auto* glue = app.add_subcommand("glue", "glue groups")->require_subcommand(1);
  std::string iso_form;
  auto* giso = glue->add_subcommand("isotropic", "isotropic subgroups and their quotient forms");
  giso->add_option("--form", iso_form, "form, e.g. \"3^-1 3^+1\" or @file")->required();
  giso->callback([&] {
    action = [&] {
      auto q = load_form(iso_form);
      char* raw = nullptr;
      check(ll_form_isotropic_subgroups_json(q.get(), &raw));
      json doc = take_json(raw);
      if (as_json) return out_json(doc);
      std::cout << doc["count"] << " isotropic subgroup(s) of " << doc["form"].get<std::string>() << "\n";
      for (const auto& h : doc["subgroups"])
        std::cout << "  order " << h["order"] << ", generators " << h["generators"].dump() << ", quotient "
                  << h["quotient"].get<std::string>() << "\n";
    };
  });

  // nikulin
  auto* nik = app.add_subcommand("nikulin", "existence and embedding criteria")->require_subcommand(1);
  std::string ex_sig, ex_form;
  auto* nex = nik->add_subcommand("exists", "does an even lattice with these invariants exist");
  nex->add_option("--sig", ex_sig, "signature p,m")->required();
  nex->add_option("--form", ex_form, "discriminant form")->required();
  nex->callback([&] {
    action = [&] {
      auto [p, m] = parse_pair(ex_sig, "--sig");
      auto q = load_form(ex_form);
      char* raw = nullptr;
      check(ll_nikulin_exists_json(p, m, q.get(), &raw));
      json doc = take_json(raw);
      if (as_json) return out_json(doc);
      std::cout << "exists: " << (doc["exists"].get<bool>() ? "true" : "false");
      if (!doc["exists"].get<bool>())
        std::cout << " (condition " << doc["failed_condition"] << ": " << doc["reason"].get<std::string>() << ")";
      std::cout << "\n";
    };
  });
  std::string em_sig, em_form, em_into;
  auto* nem = nik->add_subcommand("embed", "primitive embedding into an even unimodular lattice");
  nem->add_option("--sig", em_sig, "signature p,m of the lattice")->required();
  nem->add_option("--form", em_form, "its discriminant form")->required();
  nem->add_option("--into", em_into, "signature l+,l- of the unimodular target")->required();
  nem->callback([&] {
    action = [&] {
      auto [p, m] = parse_pair(em_sig, "--sig");
      auto [lp, lm] = parse_pair(em_into, "--into");
      auto q = load_form(em_form);
      char* raw = nullptr;
      check(ll_nikulin_embed_json(p, m, q.get(), lp, lm, &raw));
      json doc = take_json(raw);
      if (as_json) return out_json(doc);
      const auto& c = doc["complement"];
      std::cout << "embeds: " << (doc["exists"].get<bool>() ? "true" : "false") << "; complement signature ("
                << c["signature"][0] << "," << c["signature"][1] << "), form " << c["form"].get<std::string>()
                << "\n";
      if (!doc["exists"].get<bool>())
        std::cout << "complement fails condition " << doc["complement_check"]["failed_condition"] << ": "
                  << doc["complement_check"]["reason"].get<std::string>() << "\n";
      std::cout << "unique: " << (doc["unique"].get<bool>() ? "true" : doc["uniqueness_note"].get<std::string>())
                << "\n";
    };
  });

  // saturate
  std::string sat_qs, sat_qr, sat_root;
  auto* sat = app.add_subcommand("saturate", "overlattices of S + R keeping S primitive");
  sat->add_option("--qs", sat_qs, "discriminant form of S")->required();
  auto* qr_opt = sat->add_option("--qr", sat_qr, "discriminant form of R");
  sat->add_option("--root", sat_root, "registry lattice for R, e.g. E6")->excludes(qr_opt);
  sat->callback([&] {
    action = [&] {
      auto qs = load_form(sat_qs);
      FormPtr qr(nullptr, ll_form_free);
      if (!sat_root.empty()) {
        ll_lattice* l = nullptr;
        check(ll_lattice_named(sat_root.c_str(), 1, &l));
        LatticePtr R(l, ll_lattice_free);
        ll_form* f = nullptr;
        check(ll_lattice_discriminant_form(R.get(), &f));
        qr.reset(f);
      } else if (!sat_qr.empty()) {
        qr = load_form(sat_qr);
      } else {
        throw UsageFailure{"give --qr or --root"};
      }
      char* raw = nullptr;
      check(ll_saturate_json(qs.get(), qr.get(), &raw));
      json doc = take_json(raw);
      if (as_json) return out_json(doc);
      for (const auto& w : doc["witnesses"])
        std::cout << "index " << w["index"] << ": form " << w["form"].get<std::string>() << "\n";
    };
  });

  // cubic / k3 reports
  int cubic_row = 0;
  bool cubic_all = false;
  auto* cubic = app.add_subcommand("cubic", "cubic fourfold case analysis")->require_subcommand(1);
  auto* ccheck = cubic->add_subcommand("check", "E6-polarized criterion on the rank-20 table");
  auto* row_opt = ccheck->add_option("--row", cubic_row, "table row 1..15");
  ccheck->add_flag("--all", cubic_all, "every row")->excludes(row_opt);
  ccheck->callback([&] {
    action = [&] {
      if (!cubic_all && cubic_row == 0) throw UsageFailure{"give --row N or --all"};
      json doc = cubic_report(cubic_all ? 0 : cubic_row, threads);
      if (as_json) return out_json(doc);
      print_report(doc, true);
    };
  });
  int degree = -1, k3_row = 0;
  auto* k3 = app.add_subcommand("k3", "K3 case analysis")->require_subcommand(1);
  auto* k3check = k3->add_subcommand("check", "polarized criterion on the K3 table");
  k3check->add_option("--degree", degree, "0, 2, 4 or 6")->required()->check(CLI::IsMember({0, 2, 4, 6}));
  k3check->add_option("--row", k3_row, "table row 1..11 (default: all)");
  k3check->callback([&] {
    action = [&] {
      char* raw = nullptr;
      check(ll_k3_report_json(degree, k3_row, &raw));
      json doc = take_json(raw);
      if (as_json) return out_json(doc);
      print_report(doc, true);
    };
  });
  int uq_row = 0;
  auto* uq = app.add_subcommand("uniqueness", "embedding classes of S for a passing cubic row");
  uq->add_option("--row", uq_row, "table row")->required();
  uq->callback([&] {
    action = [&] {
      json doc = cubic_report(uq_row, 1)["rows"][0];
      json out = {{"row", doc["row"]}, {"group", doc["group"]}, {"classes", json::array()}};
      for (const auto& c : doc["classes"])
        out["classes"].push_back({{"T", c["T"]}, {"glue_index", c["glue_index"]},
                                  {"embedding_count", c["embedding_count"]}, {"embedding_note", c["embedding_note"]}});
      if (as_json) return out_json(out);
      if (out["classes"].empty()) std::cout << "row " << uq_row << " does not pass the criterion\n";
      for (const auto& c : out["classes"])
        std::cout << "T = " << c["T"].get<std::string>() << ": " << opt_text(c["embedding_count"])
                  << " embedding class(es)\n";
    };
  });
  int ns_row = 0;
  auto* ns = app.add_subcommand("nonsymplectic", "non-symplectic order and total order for a passing cubic row");
  ns->add_option("--row", ns_row, "table row")->required();
  ns->callback([&] {
    action = [&] {
      json doc = cubic_report(ns_row, 1)["rows"][0];
      json out = {{"row", doc["row"]}, {"group", doc["group"]}, {"order", doc["order"]}, {"classes", json::array()}};
      for (const auto& c : doc["classes"])
        out["classes"].push_back({{"T", c["T"]}, {"nonsymplectic_order", c["nonsymplectic_order"]},
                                  {"total_order", c["total_order"]}});
      if (as_json) return out_json(out);
      if (out["classes"].empty()) std::cout << "row " << ns_row << " does not pass the criterion\n";
      for (const auto& c : out["classes"])
        std::cout << "T = " << c["T"].get<std::string>() << ": nbar " << opt_text(c["nonsymplectic_order"])
                  << ", total order " << opt_text(c["total_order"]) << "\n";
    };
  });

  // normal forms
  std::vector<long long> fd_orders, fd_w0;
  std::vector<std::string> fd_weights;
  bool fd_cases = false;
  auto* fd = app.add_subcommand("family-dim", "dimension of cubics invariant under a diagonal group");
  fd->add_option("--order", fd_orders, "generator order (repeat per generator)");
  fd->add_option("--weights", fd_weights, "six weights a,b,c,d,e,f (repeat per generator)");
  fd->add_option("--w0", fd_w0, "weight class of F (repeat per generator)");
  fd->add_flag("--cases", fd_cases, "evaluate the bundled normal-form cases");
  fd->callback([&] {
    action = [&] {
      if (fd_cases) {
        char* raw = nullptr;
        check(ll_normal_form_cases_json(&raw));
        json doc = take_json(raw);
        if (as_json) return out_json(doc);
        for (const auto& c : doc["cases"])
          std::cout << c["id"].get<std::string>() << ": dimension " << c["dimension"] << " (expected "
                    << c["expected_dimension"] << ")\n";
        return;
      }
      if (fd_orders.empty() || fd_orders.size() != fd_weights.size() || fd_orders.size() != fd_w0.size())
        throw UsageFailure{"give matching --order, --weights and --w0 for each generator"};
      std::vector<int64_t> weights;
      for (const auto& w : fd_weights)
        for (auto x : parse_list(w, 6, "--weights")) weights.push_back(x);
      std::vector<int64_t> orders(fd_orders.begin(), fd_orders.end()), w0(fd_w0.begin(), fd_w0.end());
      int64_t dim = 0;
      check(ll_family_dimension(orders.data(), weights.data(), w0.data(), orders.size(), &dim));
      if (as_json) return out_json({{"dimension", dim}});
      std::cout << dim << "\n";
    };
  });
  long long sc_order = 0;
  std::string sc_weights, sc_monomials;
  auto* sc = app.add_subcommand("symplectic-check", "is a diagonal automorphism symplectic on a cubic");
  sc->add_option("--order", sc_order, "order n")->required();
  sc->add_option("--weights", sc_weights, "six weights a,b,c,d,e,f")->required();
  sc->add_option("--monomials", sc_monomials, "exponent vectors separated by ';' or '/', e.g. \"2,1,0,0,0,0/0,0,0,1,1,1\"")
      ->required();
  sc->callback([&] {
    action = [&] {
      const auto w = parse_list(sc_weights, 6, "--weights");
      std::vector<int64_t> weights(w.begin(), w.end()), monos;
      std::string item;
      std::string joined = sc_monomials;
      std::replace(joined.begin(), joined.end(), '/', ';');
      std::istringstream in(joined);
      std::size_t count = 0;
      while (std::getline(in, item, ';')) {
        for (auto e : parse_list(item, 6, "--monomials")) monos.push_back(e);
        ++count;
      }
      int res = 0;
      check(ll_symplectic_check(sc_order, weights.data(), monos.data(), count, &res));
      if (as_json) return out_json({{"symplectic", res == 1}});
      std::cout << (res ? "symplectic" : "not symplectic") << "\n";
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }
  try {
    if (action) action();
    return 0;
  } catch (const UsageFailure& e) {
    std::cerr << "usage error: " << e.message << "\n";
    return 2;
  } catch (const DomainFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return 1;
  }
}
