#include "nin/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>

namespace nin {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Content lines of a line-oriented text: trimmed, blank and '#' lines dropped,
// paired with their 1-based line numbers.
std::vector<std::pair<int, std::string>> content_lines(
    const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  int number = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++number;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.emplace_back(number, std::string(t));
  }
  return out;
}

[[noreturn]] void bad_line(int number, const std::string& why) {
  throw io_error("line " + std::to_string(number) + ": " + why);
}

long long parse_int(const std::string& token, int line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(token, &used);
  } catch (const std::exception&) {
    bad_line(line, "expected an integer, got '" + token + "'");
  }
  if (used != token.size()) {
    bad_line(line, "trailing characters after integer in '" + token + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_state_text(const necklace_state& s) {
  std::string out = std::to_string(s.geo.pairs) + " " +
                    std::to_string(s.geo.transverse) + "\n";
  for (int i = 0; i < s.geo.sites(); ++i) {
    out += std::to_string(i + 1) + " " + std::to_string(s.positions[i]) + "\n";
  }
  return out;
}

necklace_state parse_state_text(const std::string& text) {
  const auto lines = content_lines(text);
  if (lines.empty()) {
    throw io_error("empty state text");
  }
  const auto header = split(lines[0].second, ' ');
  if (header.size() != 2) {
    bad_line(lines[0].first, "header must be '<pairs> <transverse>'");
  }
  const long long pairs = parse_int(header[0], lines[0].first);
  const long long transverse = parse_int(header[1], lines[0].first);
  try {
    const geometry geo(static_cast<int>(pairs), static_cast<int>(transverse));
    const int n = geo.sites();
    if (static_cast<int>(lines.size()) - 1 != n) {
      throw io_error("expected " + std::to_string(n) + " site lines, got " +
                     std::to_string(lines.size() - 1));
    }
    necklace_state s(geo);
    std::vector<char> seen(n, 0);
    for (int r = 1; r <= n; ++r) {
      const auto fields = split(lines[r].second, ' ');
      if (fields.size() != 2) {
        bad_line(lines[r].first, "site lines are '<site> <position>'");
      }
      const long long site = parse_int(fields[0], lines[r].first);
      const long long pos = parse_int(fields[1], lines[r].first);
      if (site < 1 || site > n) {
        bad_line(lines[r].first, "site " + std::to_string(site) +
                                     " outside 1.." + std::to_string(n));
      }
      if (seen[site - 1]) {
        bad_line(lines[r].first,
                 "site " + std::to_string(site) + " listed twice");
      }
      seen[site - 1] = 1;
      if (pos < -geo.half_width() || pos > geo.half_width()) {
        bad_line(lines[r].first, "position " + std::to_string(pos) +
                                     " outside the transverse range");
      }
      s.positions[site - 1] = static_cast<spin_t>(pos);
    }
    return s;
  } catch (const io_error&) {
    throw;
  } catch (const error& e) {
    throw io_error(std::string("invalid state text: ") + e.what());
  }
}

std::string to_bitplane_csv(const necklace_state& s) {
  validate(s);
  const int half = s.geo.half_width();
  std::string out;
  for (int i = 0; i < s.geo.sites(); ++i) {
    for (int l = -half; l <= half; ++l) {
      if (l != -half) out += ',';
      out += (s.positions[i] == l) ? '1' : '0';
    }
    out += '\n';
  }
  return out;
}

std::string to_trajectory_csv(const trajectory& t) {
  std::string out = "# pairs=" + std::to_string(t.geo.pairs) +
                    " transverse=" + std::to_string(t.geo.transverse) +
                    " time_step=" + format_double(t.geo.time_step) + "\n";
  out += "n,k,value\n";
  for (std::size_t n = 0; n < t.snapshots.size(); ++n) {
    const wave_field& f = t.snapshots[n];
    for (int i = 0; i < t.geo.sites(); ++i) {
      out += std::to_string(n) + "," + std::to_string(i + 1) + "," +
             std::to_string(f.values[i]) + "\n";
    }
  }
  return out;
}

trajectory parse_trajectory_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) {
      throw io_error(std::string("unexpected end of CSV, expected ") + what);
    }
    ++line_no;
    while (!line.empty() && line.back() == '\r') line.pop_back();
  };

  next_line("metadata comment");
  int pairs = 0, transverse = 0;
  double time_step = 0.0;
  if (std::sscanf(line.c_str(), "# pairs=%d transverse=%d time_step=%lf",
                  &pairs, &transverse, &time_step) != 3) {
    bad_line(line_no, "metadata must be '# pairs=K transverse=M time_step=T'");
  }
  next_line("'n,k,value' header");
  if (line != "n,k,value") {
    bad_line(line_no, "header must be 'n,k,value'");
  }

  try {
    const geometry geo(pairs, transverse, time_step);
    trajectory t{geo, {}};
    const int sites = geo.sites();
    long long rows = 0;
    while (std::getline(in, line)) {
      ++line_no;
      while (!line.empty() && line.back() == '\r') line.pop_back();
      if (trim(line).empty()) continue;
      const auto fields = split(line, ',');
      if (fields.size() != 3) {
        bad_line(line_no, "rows are 'n,k,value'");
      }
      const long long n = parse_int(fields[0], line_no);
      const long long k = parse_int(fields[1], line_no);
      const long long v = parse_int(fields[2], line_no);
      if (n != rows / sites || k != rows % sites + 1) {
        bad_line(line_no, "rows must run n = 0,1,... with k = 1.." +
                              std::to_string(sites) + " inside each n");
      }
      if (rows % sites == 0) {
        t.snapshots.emplace_back(geo);
      }
      if (v < -geo.half_width() || v > geo.half_width()) {
        bad_line(line_no, "value " + std::to_string(v) +
                              " outside the transverse range");
      }
      t.snapshots.back().values[k - 1] = static_cast<spin_t>(v);
      ++rows;
    }
    if (rows == 0 || rows % sites != 0) {
      throw io_error("CSV ended mid-snapshot");
    }
    return t;
  } catch (const io_error&) {
    throw;
  } catch (const error& e) {
    throw io_error(std::string("invalid trajectory CSV: ") + e.what());
  }
}

std::string to_spacetime_pgm(const trajectory& t) {
  const int maxval = t.geo.transverse - 1;
  if (maxval > 255) {
    throw io_error("PGM export supports transverse sizes up to 256");
  }
  if (t.snapshots.empty()) {
    throw io_error("empty trajectory");
  }
  const int half = t.geo.half_width();
  std::string out = "P5\n" + std::to_string(t.geo.sites()) + " " +
                    std::to_string(t.snapshots.size()) + "\n" +
                    std::to_string(maxval) + "\n";
  for (const wave_field& f : t.snapshots) {
    for (int i = 0; i < t.geo.sites(); ++i) {
      out += static_cast<char>(static_cast<unsigned char>(f.values[i] + half));
    }
  }
  return out;
}

std::string to_chain_text(const spin_chain& c) {
  std::string out;
  out.reserve(c.sites() + 1);
  for (int i = 0; i < c.sites(); ++i) {
    out += c.s[i] > 0 ? '+' : '-';
  }
  out += '\n';
  return out;
}

spin_chain parse_chain_text(const std::string& text) {
  std::vector<int> spins;
  for (char ch : text) {
    if (ch == '+') {
      spins.push_back(1);
    } else if (ch == '-') {
      spins.push_back(-1);
    } else if (ch == '\n' || ch == '\r' || ch == ' ' || ch == '\t') {
      continue;
    } else {
      throw io_error(std::string("unexpected character '") + ch +
                     "' in chain text");
    }
  }
  if (spins.empty() || spins.size() % 2 != 0) {
    throw io_error("chain text must hold an even, positive number of spins");
  }
  return {static_cast<int>(spins.size() / 2), spins};
}

std::string to_chain_history_csv(const std::vector<spin_chain>& history) {
  if (history.empty()) {
    throw io_error("empty chain history");
  }
  std::string out =
      "# half_size=" + std::to_string(history[0].half_size) + "\n";
  out += "n,k,occupation\n";
  for (std::size_t n = 0; n < history.size(); ++n) {
    for (int i = 0; i < history[n].sites(); ++i) {
      out += std::to_string(n) + "," + std::to_string(i + 1) + "," +
             std::to_string((history[n].s[i] + 1) / 2) + "\n";
    }
  }
  return out;
}

std::string to_block_csv(const std::vector<block_field>& fields) {
  std::string out = "level,k,value\n";
  for (const block_field& f : fields) {
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      out += std::to_string(f.level) + "," + std::to_string(i + 1) + "," +
             std::to_string(f.values[i]) + "\n";
    }
  }
  return out;
}

std::string to_spectrum_csv(const cogwheel& w,
                            const std::vector<double>& eigenvalues) {
  std::string out = "states,time_scale,index,eigenvalue\n";
  for (std::size_t n = 0; n < eigenvalues.size(); ++n) {
    out += std::to_string(w.states) + "," + format_double(w.time_scale) + "," +
           std::to_string(n + 1) + "," + format_double(eigenvalues[n]) + "\n";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw io_error("cannot open '" + path + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw io_error("read failure on '" + path + "'");
  }
  return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) {
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) {
      throw io_error("cannot create directory '" + p.parent_path().string() +
                     "': " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw io_error("cannot open '" + path + "' for writing");
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) {
    throw io_error("write failure on '" + path + "'");
  }
}

}  // namespace nin
