#include "tetris/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>

#include "tetris/errors.hpp"

namespace tetris {
namespace {

std::string trim(std::string_view s) {
  auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && space(s.front())) s.remove_prefix(1);
  while (!s.empty() && space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::optional<std::int64_t> parse_integer(std::string_view text) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) return std::nullopt;
  return value;
}

// Yields (line number, content) for every line that is neither blank nor a
// comment. Comments are passed to `on_comment`.
template <typename OnLine, typename OnComment>
void for_each_line(std::istream& in, OnLine on_line, OnComment on_comment) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (number == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      on_comment(number, t);
      continue;
    }
    on_line(number, line);
  }
}

struct Columns {
  std::map<std::string, std::size_t> index;
  std::size_t count = 0;

  [[nodiscard]] std::optional<std::size_t> find(std::string_view name) const {
    auto it = index.find(std::string(name));
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

Columns read_header(const std::vector<std::string>& fields, std::size_t line,
                    const std::map<std::string, std::string>& aliases, std::vector<Issue>& issues) {
  Columns cols;
  cols.count = fields.size();
  for (std::size_t k = 0; k < fields.size(); ++k) {
    const std::string name = lower(fields[k]);
    auto alias = aliases.find(name);
    if (alias == aliases.end()) {
      issues.push_back({line, "unknown column '" + fields[k] + "'"});
      continue;
    }
    if (!cols.index.emplace(alias->second, k).second) {
      issues.push_back({line, "column '" + alias->second + "' appears twice"});
    }
  }
  return cols;
}

void sort_issues(std::vector<Issue>& issues) {
  std::stable_sort(issues.begin(), issues.end(), [](const Issue& a, const Issue& b) { return a.line < b.line; });
}

}  // namespace

std::vector<std::string> split_fields(const std::string& line, std::size_t line_number) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"' && trim(current).empty()) {
      current.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? current : trim(current));
      current.clear();
      was_quoted = false;
    } else if (!was_quoted) {
      current.push_back(c);
    } else if (c != ' ' && c != '\t') {
      throw ValidationError({{line_number, "unexpected text after a quoted field"}});
    }
  }
  if (quoted) throw ValidationError({{line_number, "unterminated quoted field"}});
  fields.push_back(was_quoted ? current : trim(current));
  return fields;
}

NetworkBuilder parse_obligation_rows(std::istream& in) {
  static const std::map<std::string, std::string> kAliases = {
      {"obligation_id", "id"}, {"id", "id"},
      {"debtor", "debtor"},     {"debtor_label", "debtor"},
      {"creditor", "creditor"}, {"creditor_label", "creditor"},
      {"amount", "amount"},     {"amount_minor_units", "amount"},
      {"currency", "currency"}};

  std::vector<Issue> issues;
  NetworkBuilder builder;
  std::optional<Columns> cols;
  bool header_ok = false;
  std::optional<std::string> currency;

  for_each_line(
      in,
      [&](std::size_t line, const std::string& text) {
        std::vector<std::string> fields;
        try {
          fields = split_fields(text, line);
        } catch (const ValidationError& e) {
          issues.insert(issues.end(), e.issues().begin(), e.issues().end());
          return;
        }
        if (!cols) {
          cols = read_header(fields, line, kAliases, issues);
          header_ok = true;
          for (const char* required : {"debtor", "creditor", "amount"}) {
            if (cols->find(required)) continue;
            issues.push_back({line, std::string("missing column '") + required + "'"});
            header_ok = false;
          }
          return;
        }
        if (!header_ok) return;
        if (fields.size() != cols->count) {
          issues.push_back({line, "expected " + std::to_string(cols->count) + " fields, found " +
                                      std::to_string(fields.size())});
          return;
        }
        auto field = [&](std::string_view name) -> std::string {
          auto k = cols->find(name);
          return k ? fields[*k] : std::string();
        };
        const std::string debtor = field("debtor");
        const std::string creditor = field("creditor");
        const std::string amount_text = field("amount");
        bool ok = true;
        if (debtor.empty() || creditor.empty()) {
          issues.push_back({line, "empty firm label"});
          ok = false;
        }
        const auto amount = parse_integer(amount_text);
        if (!amount) {
          issues.push_back({line, "amount '" + amount_text + "' is not a base-10 integer of minor units"});
          ok = false;
        }
        if (cols->find("currency")) {
          const std::string c = field("currency");
          if (c.empty()) {
            issues.push_back({line, "empty currency"});
            ok = false;
          } else if (!currency) {
            currency = c;
          } else if (*currency != c) {
            issues.push_back({line, "currency '" + c + "' differs from '" + *currency + "' (one currency per run)"});
            ok = false;
          }
        }
        if (!ok) return;
        std::string id = cols->find("id") ? field("id") : "row" + std::to_string(line);
        builder.add_obligation(std::move(id), debtor, creditor, *amount, line);
      },
      [](std::size_t, const std::string&) {});

  if (!cols) issues.push_back({0, "missing header row"});
  if (header_ok) {
    try {
      (void)builder.build();
    } catch (const ValidationError& e) {
      issues.insert(issues.end(), e.issues().begin(), e.issues().end());
    }
  }
  if (!issues.empty()) {
    sort_issues(issues);
    throw ValidationError(std::move(issues));
  }
  if (currency) builder.set_currency(*currency);
  return builder;
}

ObligationNetwork parse_obligations(std::istream& in) { return parse_obligation_rows(in).build(); }

ObligationNetwork ingest_obligations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError({{0, "cannot open obligations file '" + path.string() + "'"}});
  return parse_obligations(in);
}

LiquidityTable parse_liquidity(std::istream& in) {
  static const std::map<std::string, std::string> kAliases = {
      {"firm", "firm"},
      {"firm_label", "firm"},
      {"holdings", "holdings"},
      {"approved_overdraft", "approved_overdraft"},
      {"drawn_overdraft", "drawn_overdraft"}};

  std::vector<Issue> issues;
  LiquidityTable table;
  std::optional<Columns> cols;
  bool header_ok = false;
  bool have_cap = false;
  std::set<std::string> seen;

  for_each_line(
      in,
      [&](std::size_t line, const std::string& text) {
        std::vector<std::string> fields;
        try {
          fields = split_fields(text, line);
        } catch (const ValidationError& e) {
          issues.insert(issues.end(), e.issues().begin(), e.issues().end());
          return;
        }
        if (!cols) {
          cols = read_header(fields, line, kAliases, issues);
          header_ok = true;
          for (const char* required : {"firm", "holdings", "approved_overdraft", "drawn_overdraft"}) {
            if (cols->find(required)) continue;
            issues.push_back({line, std::string("missing column '") + required + "'"});
            header_ok = false;
          }
          return;
        }
        if (!header_ok) return;
        if (fields.size() != cols->count) {
          issues.push_back({line, "expected " + std::to_string(cols->count) + " fields, found " +
                                      std::to_string(fields.size())});
          return;
        }
        LiquidityRow row;
        row.line = line;
        bool ok = true;
        auto amount = [&](std::string_view name) {
          auto k = cols->find(name);
          if (!k) {
            ok = false;
            return Amount{};
          }
          const auto v = parse_integer(fields[*k]);
          if (!v || *v < 0) {
            issues.push_back({line, std::string(name) + " '" + fields[*k] + "' is not a non-negative integer"});
            ok = false;
            return Amount{};
          }
          return Amount{*v};
        };
        if (auto k = cols->find("firm")) row.firm = fields[*k];
        if (row.firm.empty()) {
          issues.push_back({line, "empty firm label"});
          ok = false;
        } else if (!seen.insert(row.firm).second) {
          issues.push_back({line, "duplicate liquidity row for firm '" + row.firm + "'"});
          ok = false;
        }
        row.holdings = amount("holdings");
        row.approved_overdraft = amount("approved_overdraft");
        row.drawn_overdraft = amount("drawn_overdraft");
        if (ok && row.drawn_overdraft > row.approved_overdraft) {
          issues.push_back({line, "drawn overdraft exceeds approved overdraft for firm '" + row.firm + "'"});
          ok = false;
        }
        if (ok) table.rows.push_back(std::move(row));
      },
      [&](std::size_t line, const std::string& comment) {
        std::string body = trim(std::string_view(comment).substr(1));
        const std::string key = "a_max";
        if (lower(body).rfind(key, 0) != 0) return;
        body = trim(std::string_view(body).substr(key.size()));
        if (body.empty() || (body.front() != '=' && body.front() != ':')) {
          issues.push_back({line, "malformed a_max directive"});
          return;
        }
        const std::string value = trim(std::string_view(body).substr(1));
        const auto v = parse_integer(value);
        if (!v || *v < 0) {
          issues.push_back({line, "a_max '" + value + "' is not a non-negative integer"});
        } else if (have_cap) {
          issues.push_back({line, "a_max directive repeated"});
        } else {
          table.facility_cap = Amount{*v};
          have_cap = true;
        }
      });

  if (!have_cap) issues.push_back({0, "missing '# a_max=<amount>' directive"});
  if (!cols) issues.push_back({0, "missing header row"});
  if (!issues.empty()) {
    sort_issues(issues);
    throw ValidationError(std::move(issues));
  }
  return table;
}

ExtendedInputs combine_inputs(NetworkBuilder obligations, const LiquidityTable& liquidity) {
  for (const LiquidityRow& row : liquidity.rows) obligations.add_firm(row.firm);
  ExtendedInputs inputs;
  inputs.network = obligations.build();
  inputs.sources = LiquiditySources::none(inputs.network.firm_count());
  inputs.sources.facility_cap = liquidity.facility_cap;
  for (const LiquidityRow& row : liquidity.rows) {
    const FirmIndex i = *inputs.network.find_firm(row.firm);
    inputs.sources.holdings[i] = row.holdings;
    inputs.sources.approved_overdraft[i] = row.approved_overdraft;
    inputs.sources.drawn_overdraft[i] = row.drawn_overdraft;
  }
  return inputs;
}

ExtendedInputs ingest_extended(const std::filesystem::path& obligations, const std::filesystem::path& liquidity) {
  std::ifstream ob(obligations, std::ios::binary);
  if (!ob) throw ValidationError({{0, "cannot open obligations file '" + obligations.string() + "'"}});
  std::ifstream lq(liquidity, std::ios::binary);
  if (!lq) throw ValidationError({{0, "cannot open liquidity file '" + liquidity.string() + "'"}});
  NetworkBuilder builder = parse_obligation_rows(ob);
  return combine_inputs(std::move(builder), parse_liquidity(lq));
}

}  // namespace tetris
