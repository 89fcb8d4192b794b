#include "binpack/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace binpack {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

Rational parse_rational_or_throw(const std::string& text, std::size_t line) {
  auto r = parse_rational(text);
  if (!r) throw ParseError("malformed rational '" + text + "'", line);
  return *r;
}

DelayFunction parse_delay(const std::string& text, std::size_t line) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ParseError("malformed delay '" + text + "'", line);
  std::string head = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  try {
    if (head == "linear") {
      return linear_delay(parse_rational_or_throw(rest, line));
    }
    if (head == "power") {
      auto parts = split(rest, ',');
      if (parts.size() != 2)
        throw ParseError("power delay needs rate,exponent", line);
      return power_delay(parse_rational_or_throw(parts[0], line),
                         parse_rational_or_throw(parts[1], line));
    }
    if (head == "table") {
      std::vector<std::pair<Rational, Rational>> pts;
      for (const auto& pair : split(rest, ',')) {
        auto tv = split(pair, ':');
        if (tv.size() != 2) throw ParseError("table delay needs t:v pairs", line);
        pts.emplace_back(parse_rational_or_throw(tv[0], line),
                         parse_rational_or_throw(tv[1], line));
      }
      return table_delay(std::move(pts));
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid delay: ") + e.what(), line);
  }
  throw ParseError("unknown delay kind '" + head + "'", line);
}

std::string emit_delay(const DelayFunction& d) {
  switch (d.kind) {
    case DelayFunction::Kind::Linear:
      return "linear:" + format_rational(d.rate);
    case DelayFunction::Kind::Power:
      return "power:" + format_rational(d.rate) + "," + format_rational(d.exponent);
    case DelayFunction::Kind::Table: {
      std::string out = "table:";
      for (std::size_t i = 0; i < d.table.size(); ++i) {
        if (i) out += ",";
        out += format_rational(d.table[i].first) + ":" +
               format_rational(d.table[i].second);
      }
      return out;
    }
  }
  return "";
}

}  // namespace

ParsedInstance parse_instance(const std::string& text) {
  ParsedInstance inst;
  bool kind_seen = false;
  std::size_t lineno = 0;
  std::size_t next_index = 0;
  std::istringstream is(text);
  std::string raw;
  while (std::getline(is, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    auto tk = tokens(raw);
    if (tk.empty()) continue;

    if (tk[0] == "kind") {
      if (tk.size() != 2) throw ParseError("kind needs one value", lineno);
      if (tk[1] == "plain")
        inst.kind = InstanceKind::Plain;
      else if (tk[1] == "clustered")
        inst.kind = InstanceKind::Clustered;
      else if (tk[1] == "timed")
        inst.kind = InstanceKind::Timed;
      else
        throw ParseError("unknown kind '" + tk[1] + "'", lineno);
      kind_seen = true;
      continue;
    }
    if (tk[0] == "k") {
      if (tk.size() != 2) throw ParseError("k needs one value", lineno);
      inst.k = std::stoi(tk[1]);
      continue;
    }
    if (tk[0] != "item")
      throw ParseError("expected 'item', 'kind', 'k' or comment", lineno);
    if (!kind_seen) throw ParseError("missing 'kind' header before items", lineno);
    if (tk.size() < 2) throw ParseError("item needs a size", lineno);

    Rational size = parse_rational_or_throw(tk[1], lineno);
    if (size > 1) throw ParseError("size exceeds 1", lineno);
    if (size < 0) throw ParseError("negative size", lineno);

    BigInt count = 1;
    std::string cluster;
    std::optional<Rational> arrive;
    std::optional<DelayFunction> delay;
    for (std::size_t i = 2; i < tk.size(); ++i) {
      auto eq = tk[i].find('=');
      if (eq == std::string::npos)
        throw ParseError("malformed field '" + tk[i] + "'", lineno);
      std::string key = tk[i].substr(0, eq);
      std::string val = tk[i].substr(eq + 1);
      if (key == "count") {
        count = BigInt(val);
        if (count < 1) throw ParseError("count must be >= 1", lineno);
      } else if (key == "cluster") {
        cluster = val;
      } else if (key == "arrive") {
        arrive = parse_rational_or_throw(val, lineno);
        if (*arrive < 0) throw ParseError("negative arrival", lineno);
      } else if (key == "delay") {
        delay = parse_delay(val, lineno);
      } else {
        throw ParseError("unknown field '" + key + "'", lineno);
      }
    }

    switch (inst.kind) {
      case InstanceKind::Plain:
        if (!cluster.empty() || arrive || delay)
          throw ParseError("plain instances take only count=", lineno);
        inst.classes.push_back({size, count, "", ""});
        break;
      case InstanceKind::Clustered:
        if (cluster.empty()) throw ParseError("clustered item needs cluster=", lineno);
        if (arrive || delay)
          throw ParseError("clustered instances take no timing fields", lineno);
        inst.classes.push_back({size, count, cluster, ""});
        break;
      case InstanceKind::Timed: {
        if (!arrive || !delay)
          throw ParseError("timed item needs arrive= and delay=", lineno);
        if (!cluster.empty())
          throw ParseError("timed instances take no cluster field", lineno);
        for (BigInt i = 0; i < count; ++i) {
          inst.timed.push_back({{size, next_index++, ""}, *arrive, *delay});
        }
        break;
      }
    }
  }
  if (!kind_seen) throw ParseError("missing 'kind' header", 1);
  return inst;
}

std::string emit_instance(const ParsedInstance& inst) {
  std::ostringstream os;
  switch (inst.kind) {
    case InstanceKind::Plain:
      os << "kind plain\n";
      break;
    case InstanceKind::Clustered:
      os << "kind clustered\n";
      os << "k " << inst.k << "\n";
      break;
    case InstanceKind::Timed:
      os << "kind timed\n";
      break;
  }
  if (inst.kind == InstanceKind::Timed) {
    for (const auto& t : inst.timed) {
      os << "item " << format_rational(t.item.size) << " arrive="
         << format_rational(t.arrival) << " delay=" << emit_delay(t.delay) << "\n";
    }
    return os.str();
  }
  for (const auto& c : inst.classes) {
    os << "item " << format_rational(c.size);
    if (c.count != 1) os << " count=" << c.count.str();
    if (!c.cluster.empty()) os << " cluster=" << c.cluster;
    os << "\n";
  }
  return os.str();
}

ClusteredInstance group_clusters(const ParsedInstance& inst) {
  if (inst.kind != InstanceKind::Clustered)
    throw std::invalid_argument("instance is not clustered");
  ClusteredInstance ci;
  ci.k = inst.k;
  for (const auto& c : inst.classes) ci.clusters[c.cluster].push_back(c);
  return ci;
}

ParsedInstance from_clustered(const ClusteredInstance& inst) {
  ParsedInstance pi;
  pi.kind = InstanceKind::Clustered;
  pi.k = inst.k;
  for (const auto& [id, classes] : inst.clusters) {
    for (const auto& c : classes) pi.classes.push_back(c);
  }
  return pi;
}

std::string emit_certificate(const Certificate& cert) {
  std::ostringstream os;
  for (const auto& p : cert.patterns) {
    os << "pattern " << p.multiplicity.str();
    for (const auto& [size, count] : p.entries) {
      os << " " << format_rational(size) << "x" << count.str();
    }
    os << "\n";
  }
  return os.str();
}

Certificate parse_certificate(const std::string& text) {
  Certificate cert;
  std::istringstream is(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    auto tk = tokens(raw);
    if (tk.empty()) continue;
    if (tk[0] != "pattern") throw ParseError("expected 'pattern'", lineno);
    if (tk.size() < 3) throw ParseError("pattern needs multiplicity and entries", lineno);
    CertificatePattern pat;
    pat.multiplicity = BigInt(tk[1]);
    for (std::size_t i = 2; i < tk.size(); ++i) {
      auto x = tk[i].rfind('x');
      if (x == std::string::npos)
        throw ParseError("pattern entry needs <size>x<count>", lineno);
      Rational size = parse_rational_or_throw(tk[i].substr(0, x), lineno);
      BigInt count(tk[i].substr(x + 1));
      pat.entries.emplace_back(size, count);
    }
    cert.patterns.push_back(std::move(pat));
  }
  return cert;
}

bool Report::all_pass() const {
  for (const auto& [name, ok] : verdicts) {
    if (!ok) return false;
  }
  return true;
}

void Report::print(std::ostream& os, bool tsv) const {
  if (tsv) {
    os << "command\t" << command << "\n";
    for (const auto& [k, v] : params) os << "param\t" << k << "\t" << v << "\n";
    if (seed) os << "seed\t" << *seed << "\n";
    for (const auto& r : rows)
      os << "value\t" << r.name << "\t" << r.exact << "\t" << r.decimal << "\n";
    for (const auto& [name, ok] : verdicts)
      os << "check\t" << name << "\t" << (ok ? "pass" : "FAIL") << "\n";
    os << "wall_ms\t" << wall_ms << "\n";
    return;
  }
  os << "== " << command;
  for (const auto& [k, v] : params) os << " " << k << "=" << v;
  if (seed) os << " seed=" << *seed;
  os << "\n";
  for (const auto& r : rows) {
    os << "  " << r.name << ": ";
    if (!r.exact.empty()) os << r.exact;
    if (!r.decimal.empty()) {
      if (!r.exact.empty()) os << " ";
      os << "(" << r.decimal << ")";
    }
    os << "\n";
  }
  for (const auto& [name, ok] : verdicts)
    os << "  [" << (ok ? "pass" : "FAIL") << "] " << name << "\n";
  os << "  wall: " << wall_ms << " ms\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace binpack
