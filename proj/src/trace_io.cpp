#include "cetana/trace_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cetana {

namespace {

std::string join_semicolon(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ';';
    out += items[i];
  }
  return out;
}

std::vector<std::string> split_semicolon(const std::string& field) {
  std::vector<std::string> out;
  if (field.empty()) return out;
  std::string cur;
  std::istringstream ss(field);
  while (std::getline(ss, cur, ';')) out.push_back(cur);
  return out;
}

std::string mental_token(const MentalObject& o) {
  switch (o.kind) {
    case MentalObjectKind::Concept: return "concept:" + o.id;
    case MentalObjectKind::Image: return "image:" + o.id;
    case MentalObjectKind::Intention: return "intention:" + o.id;
    case MentalObjectKind::Quote:
      return "quote:" + std::to_string(o.source) + ":" + o.id;
  }
  return "?";
}

MentalObject mental_from_token(const std::string& tok) {
  const auto first = tok.find(':');
  if (first == std::string::npos) throw OutOfRangeError("bad mental token '" + tok + "'");
  const std::string kind = tok.substr(0, first);
  const std::string rest = tok.substr(first + 1);
  if (kind == "concept") return make_concept(rest);
  if (kind == "image") return make_image(rest);
  if (kind == "intention") return make_intention(rest);
  if (kind == "quote") {
    const auto second = rest.find(':');
    if (second == std::string::npos) throw OutOfRangeError("bad quote token '" + tok + "'");
    return make_quote(std::stoll(rest.substr(0, second)), rest.substr(second + 1));
  }
  throw OutOfRangeError("bad mental token '" + tok + "'");
}

}  // namespace

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> csv_split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trace_to_csv(const Trace& tr, const std::optional<int>& tracked_object,
                         double theta) {
  std::ostringstream os;
  os << "t,pixels,focus,mental,feeling,factors,menu,selected,world_kind,world_cells";
  if (tracked_object) os << ",layer";
  os << "\n";
  for (const auto& e : tr.entries) {
    const Ceta& c = e.ceta;
    std::vector<std::string> pixels;
    for (int v : c.body.pixels) pixels.push_back(std::to_string(v));
    std::vector<std::string> focus;
    for (auto i : c.body.focus) focus.push_back(std::to_string(i));
    std::vector<std::string> mental;
    for (const auto& o : c.mental.objects) mental.push_back(mental_token(o));
    std::vector<std::string> factors;
    for (const auto& [name, v] : c.mind.factors) factors.push_back(name + ":" + format_double(v));
    std::vector<std::string> menu(c.action.menu.begin(), c.action.menu.end());
    std::vector<std::string> selected(c.action.selected.begin(), c.action.selected.end());
    std::vector<std::string> cells;
    for (auto v : e.world.cells) cells.push_back(std::to_string(v));

    os << c.t << ',' << csv_escape(join_semicolon(pixels)) << ','
       << csv_escape(join_semicolon(focus)) << ',' << csv_escape(join_semicolon(mental)) << ','
       << numeric(c.mind.feeling) << ',' << csv_escape(join_semicolon(factors)) << ','
       << csv_escape(join_semicolon(menu)) << ',' << csv_escape(join_semicolon(selected)) << ','
       << csv_escape(e.world.kind) << ',' << csv_escape(join_semicolon(cells));
    if (tracked_object) {
      const bool has_next = tr.has_tick(c.t + 1);
      os << ',' << (has_next ? layer_name(classify_layer(tr, *tracked_object, c.t, theta)) : "");
    }
    os << "\n";
  }
  return os.str();
}

Trace trace_from_csv(const std::string& text) {
  std::istringstream ss(text);
  std::string line;
  if (!std::getline(ss, line)) throw OutOfRangeError("empty trace file");
  const auto header = csv_split_row(line);
  if (header.size() < 10 || header[0] != "t") {
    throw OutOfRangeError("unrecognized trace header");
  }

  Trace tr;
  bool first = true;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    const auto f = csv_split_row(line);
    if (f.size() < 10) throw OutOfRangeError("short trace row: '" + line + "'");
    Ceta c;
    c.t = std::stoll(f[0]);
    for (const auto& tok : split_semicolon(f[1])) c.body.pixels.push_back(std::stoi(tok));
    for (const auto& tok : split_semicolon(f[2])) {
      c.body.focus.insert(static_cast<std::size_t>(std::stoull(tok)));
    }
    for (const auto& tok : split_semicolon(f[3])) c.mental.objects.insert(mental_from_token(tok));
    c.mind.feeling = feeling_from_int(std::stoi(f[4]));
    for (const auto& tok : split_semicolon(f[5])) {
      const auto colon = tok.rfind(':');
      if (colon == std::string::npos) throw OutOfRangeError("bad factor token '" + tok + "'");
      c.mind.factors[tok.substr(0, colon)] = parse_double(tok.substr(colon + 1));
    }
    for (const auto& tok : split_semicolon(f[6])) c.action.menu.insert(tok);
    for (const auto& tok : split_semicolon(f[7])) c.action.selected.insert(tok);
    WorldState w;
    w.kind = f[8];
    for (const auto& tok : split_semicolon(f[9])) w.cells.push_back(std::stoll(tok));
    if (first) {
      tr.t0 = c.t;
      first = false;
    }
    tr.append(std::move(c), std::move(w));
  }
  return tr;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cetana
