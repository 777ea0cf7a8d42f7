#include "flagbott/spec_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace flagbott {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kParse, where + ": " + what);
}

std::string location_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

Integer parse_entry(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Integer(v.get<std::uint64_t>());
    return Integer(v.get<std::int64_t>());
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    const bool digits = !s.empty() &&
                        std::all_of(s.begin() + (s[0] == '-' ? 1 : 0), s.end(),
                                    [](char c) { return c >= '0' && c <= '9'; }) &&
                        s != "-";
    if (!digits) schema_error(where, "string entry \"" + s + "\" is not a decimal integer");
    return Integer(s);
  }
  if (v.is_number_float())
    schema_error(where, "expected an integer (quote values beyond 64 bits as strings)");
  schema_error(where, "expected an integer");
}

IntMatrix parse_matrix(const json& v, const std::string& where) {
  if (!v.is_array()) schema_error(where, "matrix must be an array of rows");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  std::vector<Integer> entries;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rw = where + "/" + std::to_string(r);
    const json& row = v[r];
    if (!row.is_array()) schema_error(rw, "row must be an array");
    if (r == 0) cols = row.size();
    if (row.size() != cols)
      schema_error(rw, "row has " + std::to_string(row.size()) + " entries, expected " +
                           std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c)
      entries.push_back(parse_entry(row[c], rw + "/" + std::to_string(c)));
  }
  return IntMatrix(rows, cols, std::move(entries));
}

bool parse_int(std::string_view s, int& out) {
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && p == e && !s.empty();
}

}  // namespace

FlagBottTower parse_tower_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParse, location_of(text, e.byte == 0 ? 0 : e.byte - 1) +
                                       ": " + e.what());
  }
  if (!doc.is_object()) schema_error("/", "spec must be a JSON object");
  for (const auto& [key, unused] : doc.items())
    if (key != "dims" && key != "A") schema_error("/" + key, "unknown field");
  if (!doc.contains("dims")) schema_error("/", "missing field \"dims\"");
  const json& jd = doc["dims"];
  if (!jd.is_array()) schema_error("/dims", "expected an array of stage dimensions");
  std::vector<int> dims;
  for (std::size_t i = 0; i < jd.size(); ++i) {
    const std::string where = "/dims/" + std::to_string(i);
    if (!jd[i].is_number_integer()) schema_error(where, "expected an integer");
    const auto d = jd[i].get<std::int64_t>();
    if (d < 0 || d > 62) schema_error(where, "dimension " + std::to_string(d) + " out of range");
    dims.push_back(static_cast<int>(d));
  }

  std::map<FlagBottTower::Key, IntMatrix> matrices;
  if (doc.contains("A")) {
    const json& ja = doc["A"];
    if (!ja.is_object()) schema_error("/A", "expected an object keyed by \"j,l\"");
    for (const auto& [key, value] : ja.items()) {
      const std::string where = "/A/" + key;
      const auto comma = key.find(',');
      int j = 0, l = 0;
      if (comma == std::string::npos || !parse_int(std::string_view(key).substr(0, comma), j) ||
          !parse_int(std::string_view(key).substr(comma + 1), l))
        schema_error(where, "key must look like \"j,l\"");
      if (!matrices.emplace(FlagBottTower::Key{j, l}, parse_matrix(value, where)).second)
        schema_error(where, "duplicate matrix");
    }
  }
  return FlagBottTower(std::move(dims), std::move(matrices));
}

FlagBottTower load_tower_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_tower_json(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string tower_to_json(const FlagBottTower& t) {
  json doc;
  doc["dims"] = t.dims();
  json a = json::object();
  for (const auto& [key, m] : t.matrices()) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (const auto& e : m.row(r)) {
        if (e >= std::numeric_limits<std::int64_t>::min() &&
            e <= std::numeric_limits<std::int64_t>::max())
          row.push_back(static_cast<std::int64_t>(e));
        else
          row.push_back(e.str());
      }
      rows.push_back(std::move(row));
    }
    a[std::to_string(key.first) + "," + std::to_string(key.second)] = std::move(rows);
  }
  doc["A"] = std::move(a);
  return doc.dump();
}

std::string export_fanbott(const Fan& f) {
  std::string out = "FANBOTT 1\ndims";
  for (int d : f.dims()) out += " " + std::to_string(d);
  out += "\nRAYS " + std::to_string(f.rays().size()) + "\n";
  for (const auto& r : f.rays()) {
    out += std::to_string(r.label.stage) + " " + r.label.set.to_string() + " :";
    for (const auto& c : r.vector) out += " " + c.str();
    out += '\n';
  }
  std::vector<std::size_t> order(f.num_cones());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return f.tuple_index(a) < f.tuple_index(b);
  });
  out += "MAXCONES " + std::to_string(f.num_cones()) + "\n";
  for (std::size_t i : order) {
    bool first = true;
    for (RayIndex r : f.cone(i)) {
      if (!first) out += ' ';
      out += std::to_string(r);
      first = false;
    }
    out += '\n';
  }
  return out;
}

void write_fanbott(const Fan& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kInvalidArgument, path + ": cannot open for writing");
  const std::string text = export_fanbott(f);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::kInvalidArgument, path + ": write failed");
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  std::string_view next() {
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) fail("missing newline");
    std::string_view line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_;
    return line;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kParse, "FANBOTT line " + std::to_string(line_) + ": " + what);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
};

std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = s.find(' ', i);
    if (j == std::string_view::npos) j = s.size();
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

std::size_t expect_count(LineReader& in, std::string_view keyword) {
  auto parts = split_spaces(in.next());
  int k = 0;
  if (parts.size() != 2 || parts[0] != keyword || !parse_int(parts[1], k) || k < 0)
    in.fail("expected \"" + std::string(keyword) + " <count>\"");
  return static_cast<std::size_t>(k);
}

}  // namespace

Fan parse_fanbott(std::string_view text) {
  LineReader in(text);
  if (in.next() != "FANBOTT 1") in.fail("expected header \"FANBOTT 1\"");
  auto dim_parts = split_spaces(in.next());
  if (dim_parts.empty() || dim_parts[0] != "dims") in.fail("expected \"dims ...\"");
  std::vector<int> dims;
  for (std::size_t i = 1; i < dim_parts.size(); ++i) {
    int d = 0;
    if (!parse_int(dim_parts[i], d) || d < 1 || d > 62) in.fail("bad dimension");
    dims.push_back(d);
  }
  const std::size_t nrays = expect_count(in, "RAYS");
  std::vector<Ray> rays;
  for (std::size_t i = 0; i < nrays; ++i) {
    auto parts = split_spaces(in.next());
    int stage = 0;
    if (parts.size() < 3 || !parse_int(parts[0], stage) || stage < 1 ||
        stage > static_cast<int>(dims.size()) || parts[2] != ":")
      in.fail("expected \"stage {set} : coordinates\"");
    std::string_view set = parts[1];
    if (set.size() < 2 || set.front() != '{' || set.back() != '}') in.fail("bad subset");
    std::uint64_t bits = 0;
    const int ground = dims[stage - 1] + 1;
    set = set.substr(1, set.size() - 2);
    while (!set.empty()) {
      const std::size_t comma = set.find(',');
      int e = 0;
      if (!parse_int(set.substr(0, comma), e) || e < 1 || e > ground) in.fail("bad subset element");
      bits |= std::uint64_t{1} << (e - 1);
      set = comma == std::string_view::npos ? std::string_view{} : set.substr(comma + 1);
    }
    IntVector v;
    for (std::size_t c = 3; c < parts.size(); ++c) {
      try {
        v.emplace_back(std::string(parts[c]));
      } catch (const std::exception&) {
        in.fail("bad coordinate");
      }
    }
    rays.push_back({{stage, Subset(ground, bits)}, std::move(v)});
  }
  Fan fan(std::move(dims), std::move(rays));
  const std::size_t ncones = expect_count(in, "MAXCONES");
  for (std::size_t i = 0; i < ncones; ++i) {
    std::vector<RayIndex> cone;
    for (auto part : split_spaces(in.next())) {
      int r = 0;
      if (!parse_int(part, r) || r < 0 || static_cast<std::size_t>(r) >= nrays)
        in.fail("bad ray index");
      cone.push_back(static_cast<RayIndex>(r));
    }
    fan.add_cone(std::move(cone), i);
  }
  if (!in.at_end()) in.fail("trailing data");
  return fan;
}

std::string format_ray_table(const Fan& f) {
  std::string out;
  for (std::size_t i = 0; i < f.rays().size(); ++i) {
    const Ray& r = f.rays()[i];
    out += std::to_string(i) + " " + r.label.to_string() + " :";
    for (const auto& c : r.vector) out += " " + c.str();
    out += '\n';
  }
  return out;
}

}  // namespace flagbott
