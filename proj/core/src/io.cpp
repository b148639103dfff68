#include "wracah/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace wracah {

using Json = nlohmann::ordered_json;

double round_emitted(double x) {
  if (!std::isfinite(x)) fail(Errc::not_finite, "non-finite value in output");
  if (std::abs(x) < 5e-13) return 0.0;
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", x);
  double rounded = std::strtod(buffer, nullptr);
  return rounded == 0.0 ? 0.0 : rounded;
}

std::string format_number(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", round_emitted(x));
  return buffer;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "pretty") return OutputFormat::pretty;
  if (name == "csv") return OutputFormat::csv;
  fail(Errc::bad_input,
       "unknown format '" + name + "' (expected json, pretty or csv)");
}

namespace {

Json complex_json(Complex z) {
  return Json::array({round_emitted(std::real(z)), round_emitted(std::imag(z))});
}

bool emitted_nonzero(Complex z) {
  return round_emitted(std::real(z)) != 0.0 ||
         round_emitted(std::imag(z)) != 0.0;
}

std::string format_complex(Complex z) {
  double re = round_emitted(std::real(z));
  double im = round_emitted(std::imag(z));
  if (im == 0.0) return format_number(re);
  std::string out = format_number(re);
  out += (im < 0 ? "-" : "+");
  out += format_number(std::abs(im));
  out += "i";
  return out;
}

std::string pad(const std::string& s, std::size_t width) {
  if (s.size() >= width) return s + " ";
  return s + std::string(width - s.size() + 1, ' ');
}

// Column label "alias.a.gamma", e.g. "E.1.2".
std::string column_name(const Scheme& scheme, const StateLabel& label) {
  return scheme.table().aliases[label.irrep] + "." + std::to_string(label.a) +
         "." + std::to_string(label.gamma);
}

Json label_json(const Scheme& scheme, const StateLabel& label) {
  Json out;
  out["j"] = label.j.str();
  out["a"] = label.a;
  out["irrep"] = scheme.table().aliases[label.irrep];
  out["gamma"] = label.gamma;
  return out;
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::bad_input, "cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Json parse_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::bad_input, "invalid JSON in " + path + ": " + e.what());
  }
}

Complex parse_complex(const Json& node, const std::string& what) {
  if (node.is_number()) return Complex(node.get<double>(), 0.0);
  if (node.is_array() && node.size() == 2 && node[0].is_number() &&
      node[1].is_number())
    return Complex(node[0].get<double>(), node[1].get<double>());
  fail(Errc::bad_input, what + " must be a number or an [re, im] pair");
}

}  // namespace

DoubleGroup load_group_file(const std::string& path, GenerateOptions options) {
  Json doc = parse_json_file(path);
  if (!doc.is_object() || !doc.contains("generators") ||
      !doc["generators"].is_array() || doc["generators"].empty())
    fail(Errc::bad_input,
         path + ": expected an object with a nonempty \"generators\" array");

  std::string name = doc.value("name", std::string("custom"));
  if (doc.contains("max_order")) {
    if (!doc["max_order"].is_number_unsigned())
      fail(Errc::bad_input, path + ": \"max_order\" must be a positive integer");
    options.max_order = doc["max_order"].get<std::size_t>();
  }

  std::vector<SU2Element> generators;
  for (const auto& g : doc["generators"]) {
    if (!g.is_array() || g.size() != 2 || !g[0].is_array() ||
        g[0].size() != 2 || !g[1].is_array() || g[1].size() != 2)
      fail(Errc::bad_input,
           path + ": each generator must be a 2x2 matrix of [re, im] pairs");
    SU2Element m;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        m(r, c) = parse_complex(g[r][c], path + ": generator entry");
    generators.push_back(m);
  }
  return generate_group(name, generators, options);
}

DoubleGroup resolve_group(const std::string& name_or_path,
                          GenerateOptions options) {
  if (is_preset_group(name_or_path)) return preset_group(name_or_path);
  if (std::filesystem::exists(name_or_path))
    return load_group_file(name_or_path, options);
  fail(Errc::bad_input,
       "'" + name_or_path + "' is neither a preset group (" +
           [] {
             std::string all;
             for (const auto& n : preset_group_names())
               all += (all.empty() ? "" : ", ") + n;
             return all;
           }() +
           ") nor an existing file");
}

CrystalFieldInput load_cf_params(const std::string& path) {
  Json doc = parse_json_file(path);
  if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_array())
    fail(Errc::bad_input, path + ": expected an object with a \"terms\" array");

  CrystalFieldInput input;
  if (doc.contains("ell")) {
    if (!doc["ell"].is_number_integer() || doc["ell"].get<int>() < 0)
      fail(Errc::bad_input, path + ": \"ell\" must be a nonnegative integer");
    input.ell = doc["ell"].get<int>();
  }
  input.params.symmetry = doc.value("symmetry", std::string("custom"));
  for (const auto& term : doc["terms"]) {
    if (!term.is_object() || !term.contains("k") || !term.contains("q") ||
        !term.contains("B") || !term["k"].is_number_integer() ||
        !term["q"].is_number_integer())
      fail(Errc::bad_input,
           path + ": each term must be {\"k\": int, \"q\": int, \"B\": ...}");
    input.params.terms.push_back(CrystalFieldTerm{
        term["k"].get<int>(), term["q"].get<int>(),
        parse_complex(term["B"], path + ": amplitude B")});
  }
  return input;
}

std::string emit_group(const Scheme& scheme, OutputFormat format) {
  const CharacterTable& t = scheme.table();
  const DoubleGroup& g = scheme.group();

  if (format == OutputFormat::json) {
    Json out;
    out["name"] = g.name;
    out["order"] = g.order();
    out["num_classes"] = g.num_classes();
    Json classes = Json::array();
    for (int c = 0; c < g.num_classes(); ++c) {
      Json cls;
      cls["size"] = g.class_size(c);
      cls["trace"] = complex_json(g.elements[g.classes[c][0]].trace());
      classes.push_back(cls);
    }
    out["classes"] = classes;
    Json irreps = Json::array();
    for (int r = 0; r < t.num_irreps(); ++r) {
      Json row;
      row["label"] = t.labels[r];
      row["alias"] = t.aliases[r];
      row["dim"] = t.dims[r];
      row["spinor"] = static_cast<bool>(t.spinor[r]);
      row["first_j"] = scheme.irrep(r).source_j.str();
      Json chars = Json::array();
      for (int c = 0; c < t.num_classes(); ++c)
        chars.push_back(complex_json(t.chi(r, c)));
      row["characters"] = chars;
      irreps.push_back(row);
    }
    out["irreps"] = irreps;
    return dump(out);
  }
  if (format == OutputFormat::csv)
    fail(Errc::bad_input, "group output supports json and pretty formats");

  std::ostringstream os;
  os << "group " << g.name << "  order " << g.order() << "  classes "
     << g.num_classes() << "\n\n";
  os << pad("irrep", 7) << pad("alias", 7) << pad("dim", 4) << pad("type", 7)
     << pad("first_j", 8);
  for (int c = 0; c < g.num_classes(); ++c)
    os << pad("|C" + std::to_string(c) + "|=" + std::to_string(g.class_size(c)),
              13);
  os << "\n";
  for (int r = 0; r < t.num_irreps(); ++r) {
    os << pad(t.labels[r], 7) << pad(t.aliases[r], 7)
       << pad(std::to_string(t.dims[r]), 4)
       << pad(t.spinor[r] ? "spinor" : "vector", 7)
       << pad(scheme.irrep(r).source_j.str(), 8);
    for (int c = 0; c < g.num_classes(); ++c)
      os << pad(format_complex(t.chi(r, c)), 13);
    os << "\n";
  }
  return os.str();
}

std::string emit_branching(const Scheme& scheme, const BranchingRule& rule,
                           OutputFormat format) {
  const CharacterTable& t = scheme.table();
  if (format == OutputFormat::json) {
    Json out;
    out["j"] = rule.j.str();
    Json mult = Json::object();
    for (int r = 0; r < t.num_irreps(); ++r)
      if (rule.multiplicity[r] > 0) mult[t.aliases[r]] = rule.multiplicity[r];
    out["multiplicities"] = mult;
    return dump(out);
  }
  if (format == OutputFormat::csv)
    fail(Errc::bad_input, "branching output supports json and pretty formats");

  std::ostringstream os;
  os << "D^" << rule.j.str() << " of " << scheme.group().name << " (dim "
     << rule.j.twice() + 1 << ") -> ";
  bool first = true;
  for (int r = 0; r < t.num_irreps(); ++r) {
    for (int m = 0; m < rule.multiplicity[r]; ++m) {
      if (!first) os << " + ";
      os << t.aliases[r];
      first = false;
    }
  }
  if (first) os << "(nothing)";
  os << "\n";
  return os.str();
}

namespace {

std::string emit_reduction_impl(const Scheme& scheme,
                                const ReductionTable& table,
                                const std::vector<std::string>* parents,
                                const std::string& parent_group,
                                OutputFormat format) {
  const auto ms = projection_labels(table.j);
  if (format == OutputFormat::json) {
    Json out;
    out["group"] = scheme.group().name;
    if (!parent_group.empty()) out["chain_parent"] = parent_group;
    out["j"] = table.j.str();
    Json columns = Json::array();
    for (std::size_t i = 0; i < table.labels.size(); ++i) {
      Json col = label_json(scheme, table.labels[i]);
      if (parents) col["parent"] = (*parents)[i];
      columns.push_back(col);
    }
    out["columns"] = columns;
    Json m_list = Json::array();
    for (const auto& m : ms) m_list.push_back(m.str());
    out["m"] = m_list;
    Json rows = Json::array();
    for (int a = 0; a < table.coeffs.rows(); ++a) {
      Json row = Json::array();
      for (int b = 0; b < table.coeffs.cols(); ++b)
        row.push_back(complex_json(table.coeffs(a, b)));
      rows.push_back(row);
    }
    out["coefficients"] = rows;
    return dump(out);
  }
  if (format == OutputFormat::csv)
    fail(Errc::bad_input, "reduction output supports json and pretty formats");

  std::ostringstream os;
  os << "reduction of D^" << table.j.str() << " under " << scheme.group().name;
  if (!parent_group.empty()) os << " (chain parent " << parent_group << ")";
  os << "\n\n";
  os << pad("m", 6);
  for (const auto& label : table.labels)
    os << pad(column_name(scheme, label), 24);
  os << "\n";
  if (parents) {
    os << pad("", 6);
    for (const auto& p : *parents) os << pad("<" + p, 24);
    os << "\n";
  }
  for (std::size_t a = 0; a < ms.size(); ++a) {
    os << pad(ms[a].str(), 6);
    for (int b = 0; b < table.coeffs.cols(); ++b)
      os << pad(format_complex(table.coeffs(static_cast<int>(a), b)), 24);
    os << "\n";
  }
  return os.str();
}

}  // namespace

std::string emit_reduction(const Scheme& scheme, const ReductionTable& table,
                           OutputFormat format) {
  return emit_reduction_impl(scheme, table, nullptr, {}, format);
}

std::string emit_chain(const Scheme& parent, const Scheme& child,
                       const ChainTable& chain, OutputFormat format) {
  std::vector<std::string> parents;
  parents.reserve(chain.parents.size());
  const auto& rule = parent.branching(chain.table.j);
  for (const auto& p : chain.parents) {
    std::string name = parent.table().aliases[p.parent_irrep];
    if (rule.multiplicity[p.parent_irrep] > 1)
      name += "(" + std::to_string(p.parent_copy) + ")";
    if (p.residual > 1) name += "#" + std::to_string(p.residual);
    parents.push_back(std::move(name));
  }
  return emit_reduction_impl(child, chain.table, &parents,
                             parent.group().name, format);
}

std::string emit_symbol_table(const Scheme& scheme, const SymbolTable& table,
                              const std::string& kind, OutputFormat format) {
  if (format == OutputFormat::json) {
    Json out;
    out["group"] = scheme.group().name;
    out["kind"] = kind;
    out["j1"] = table.j1.str();
    out["j2"] = table.j2.str();
    out[kind == "f" ? "k" : "j3"] = table.j3.str();
    Json entries = Json::array();
    for (int i1 = 0; i1 < table.n1(); ++i1)
      for (int i2 = 0; i2 < table.n2(); ++i2)
        for (int i3 = 0; i3 < table.n3(); ++i3) {
          Complex v = table.value(i1, i2, i3);
          if (!emitted_nonzero(v)) continue;
          Json entry;
          entry["c1"] = label_json(scheme, table.labels1[i1]);
          entry["c2"] = label_json(scheme, table.labels2[i2]);
          entry["c3"] = label_json(scheme, table.labels3[i3]);
          entry["value"] = complex_json(v);
          entries.push_back(entry);
        }
    out["entries"] = entries;
    return dump(out);
  }

  std::ostringstream os;
  const bool csv = format == OutputFormat::csv;
  auto cell = [&](const std::string& s, std::size_t width) {
    if (csv)
      os << s << ",";
    else
      os << pad(s, width);
  };
  if (!csv)
    os << kind << " symbols (j1=" << table.j1.str() << ", j2=" << table.j2.str()
       << ", " << (kind == "f" ? "k=" : "j3=") << table.j3.str() << ") of "
       << scheme.group().name << "\n\n";
  cell("c1", 12);
  cell("c2", 12);
  cell("c3", 12);
  if (csv)
    os << "re,im\n";
  else
    os << pad("value", 24) << "\n";
  for (int i1 = 0; i1 < table.n1(); ++i1)
    for (int i2 = 0; i2 < table.n2(); ++i2)
      for (int i3 = 0; i3 < table.n3(); ++i3) {
        Complex v = table.value(i1, i2, i3);
        if (!emitted_nonzero(v)) continue;
        cell(column_name(scheme, table.labels1[i1]), 12);
        cell(column_name(scheme, table.labels2[i2]), 12);
        cell(column_name(scheme, table.labels3[i3]), 12);
        if (csv)
          os << format_number(std::real(v)) << "," << format_number(std::imag(v))
             << "\n";
        else
          os << pad(format_complex(v), 24) << "\n";
      }
  return os.str();
}

std::string emit_two_j(const Scheme& scheme, HalfInt j,
                       const Eigen::MatrixXcd& matrix, OutputFormat format) {
  const ReductionTable& table = scheme.reduction(j);
  if (format == OutputFormat::json) {
    Json out;
    out["group"] = scheme.group().name;
    out["j"] = j.str();
    Json columns = Json::array();
    for (const auto& label : table.labels)
      columns.push_back(label_json(scheme, label));
    out["labels"] = columns;
    Json rows = Json::array();
    for (int a = 0; a < matrix.rows(); ++a) {
      Json row = Json::array();
      for (int b = 0; b < matrix.cols(); ++b)
        row.push_back(complex_json(matrix(a, b)));
      rows.push_back(row);
    }
    out["matrix"] = rows;
    return dump(out);
  }

  std::ostringstream os;
  const bool csv = format == OutputFormat::csv;
  if (!csv) {
    os << "adapted metric for j=" << j.str() << " of " << scheme.group().name
       << "\n\n";
    os << pad("", 12);
    for (const auto& label : table.labels)
      os << pad(column_name(scheme, label), 16);
    os << "\n";
    for (int a = 0; a < matrix.rows(); ++a) {
      os << pad(column_name(scheme, table.labels[a]), 12);
      for (int b = 0; b < matrix.cols(); ++b)
        os << pad(format_complex(matrix(a, b)), 16);
      os << "\n";
    }
    return os.str();
  }
  os << "c1,c2,re,im\n";
  for (int a = 0; a < matrix.rows(); ++a)
    for (int b = 0; b < matrix.cols(); ++b) {
      if (!emitted_nonzero(matrix(a, b))) continue;
      os << column_name(scheme, table.labels[a]) << ","
         << column_name(scheme, table.labels[b]) << ","
         << format_number(std::real(matrix(a, b))) << ","
         << format_number(std::imag(matrix(a, b))) << "\n";
    }
  return os.str();
}

std::string emit_isoscalars(const Scheme& scheme, const IsoscalarSet& set,
                            OutputFormat format) {
  const auto& aliases = scheme.table().aliases;
  if (format == OutputFormat::json) {
    Json out;
    out["group"] = scheme.group().name;
    out["j1"] = set.j1.str();
    out["j2"] = set.j2.str();
    out["k"] = set.k.str();
    out["max_residual"] = round_emitted(set.max_residual);
    Json factors = Json::array();
    for (const auto& f : set.factors) {
      if (!emitted_nonzero(f.value)) continue;
      Json row;
      row["j2"] = f.j2.str();
      row["a2"] = f.a2;
      row["irrep2"] = aliases[f.irrep2];
      row["k"] = f.k.str();
      row["ak"] = f.ak;
      row["irrepk"] = aliases[f.irrepk];
      row["j1"] = f.j1.str();
      row["a1"] = f.a1;
      row["irrep1"] = aliases[f.irrep1];
      row["beta"] = f.beta;
      row["value"] = complex_json(f.value);
      factors.push_back(row);
    }
    out["factors"] = factors;
    return dump(out);
  }

  std::ostringstream os;
  const bool csv = format == OutputFormat::csv;
  if (csv) {
    os << "j2,a2,irrep2,k,ak,irrepk,j1,a1,irrep1,beta,re,im\n";
  } else {
    os << "isoscalar factors (j1=" << set.j1.str() << ", j2=" << set.j2.str()
       << ", k=" << set.k.str() << ") of " << scheme.group().name
       << "   max residual " << format_number(set.max_residual) << "\n\n";
    os << pad("j2", 5) << pad("a2", 3) << pad("irrep2", 7) << pad("k", 5)
       << pad("ak", 3) << pad("irrepk", 7) << pad("j1", 5) << pad("a1", 3)
       << pad("irrep1", 7) << pad("beta", 5) << pad("value", 24) << "\n";
  }
  for (const auto& f : set.factors) {
    if (!emitted_nonzero(f.value)) continue;
    if (csv) {
      os << f.j2.str() << "," << f.a2 << "," << aliases[f.irrep2] << ","
         << f.k.str() << "," << f.ak << "," << aliases[f.irrepk] << ","
         << f.j1.str() << "," << f.a1 << "," << aliases[f.irrep1] << ","
         << f.beta << "," << format_number(std::real(f.value)) << ","
         << format_number(std::imag(f.value)) << "\n";
    } else {
      os << pad(f.j2.str(), 5) << pad(std::to_string(f.a2), 3)
         << pad(aliases[f.irrep2], 7) << pad(f.k.str(), 5)
         << pad(std::to_string(f.ak), 3) << pad(aliases[f.irrepk], 7)
         << pad(f.j1.str(), 5) << pad(std::to_string(f.a1), 3)
         << pad(aliases[f.irrep1], 7) << pad(std::to_string(f.beta), 5)
         << pad(format_complex(f.value), 24) << "\n";
    }
  }
  return os.str();
}

std::string emit_levels(const std::string& group_name,
                        const LevelScheme& levels,
                        const AdaptedCrystalField* adapted,
                        OutputFormat format) {
  if (format == OutputFormat::json) {
    Json out;
    if (!group_name.empty()) out["group"] = group_name;
    out["ell"] = levels.ell;
    if (adapted && !adapted->parent_group.empty())
      out["chain_parent"] = adapted->parent_group;
    out["cluster_tolerance"] = round_emitted(levels.cluster_tolerance);
    if (adapted) out["off_block_norm"] = round_emitted(adapted->off_block_norm);
    Json rows = Json::array();
    for (const auto& level : levels.levels) {
      Json row;
      row["energy"] = round_emitted(level.energy);
      row["degeneracy"] = level.degeneracy;
      if (!level.irreps.empty()) row["irreps"] = level.irreps;
      if (!level.parents.empty()) row["parents"] = level.parents;
      rows.push_back(row);
    }
    out["levels"] = rows;
    if (adapted && !adapted->warnings.empty()) out["warnings"] = adapted->warnings;
    return dump(out);
  }
  if (format == OutputFormat::csv)
    fail(Errc::bad_input, "level output supports json and pretty formats");

  std::ostringstream os;
  os << "one-electron levels (ell=" << levels.ell;
  if (!group_name.empty()) os << ", group " << group_name;
  if (adapted && !adapted->parent_group.empty())
    os << ", chain parent " << adapted->parent_group;
  os << ")\n";
  if (adapted)
    os << "symmetry leakage (off-block norm): "
       << format_number(adapted->off_block_norm) << "\n";
  os << "\n";
  os << pad("energy", 18) << pad("deg", 4) << pad("irreps", 20) << "parents\n";
  for (const auto& level : levels.levels) {
    std::string irreps, parents;
    for (std::size_t i = 0; i < level.irreps.size(); ++i) {
      if (i && level.irreps[i] == level.irreps[i - 1]) continue;
      irreps += (irreps.empty() ? "" : "+") + level.irreps[i];
    }
    for (std::size_t i = 0; i < level.parents.size(); ++i) {
      if (i && level.parents[i] == level.parents[i - 1]) continue;
      parents += (parents.empty() ? "" : "+") + level.parents[i];
    }
    os << pad(format_number(level.energy), 18)
       << pad(std::to_string(level.degeneracy), 4) << pad(irreps, 20)
       << parents << "\n";
  }
  if (adapted)
    for (const auto& w : adapted->warnings) os << "warning: " << w << "\n";
  return os.str();
}

std::string emit_error(Errc code, const std::string& message) {
  Json out;
  out["error"] = Json{{"code", to_string(code)}, {"message", message}};
  return dump(out);
}

}  // namespace wracah
