// Command-line front end.
//
//   ontosem analyze "john read a book" [--trace] [--format jsonl]
//   ontosem repl
//   ontosem golden [path/to/golden.tsv]
//
// Exit codes: 0 clean, 1 at least one anomalous form (or failed golden
// case), 2 load or parse errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <ontosem/ontosem.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunConfig {
  std::string ontology_path;
  std::string lexicon_path;
  std::string mode = "plain";
  bool trace = false;
  std::string format = "text";
};

ontosem::ComposeMode compose_mode(const RunConfig& cfg) {
  return cfg.mode == "reified" ? ontosem::ComposeMode::Reified
                               : ontosem::ComposeMode::Plain;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ontosem::Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Session {
  ontosem::Ontology onto;
  ontosem::Lexicon lex;
};

// Loader errors get the offending file (and line, when known) prepended.
template <class Fn>
auto located(const std::string& path, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ontosem::SyntaxError& e) {
    std::string at = path;
    if (e.line > 0) at += ":" + std::to_string(e.line);
    throw ontosem::Error(at + ": " + e.what());
  } catch (const ontosem::Error& e) {
    throw ontosem::Error(path + ": " + e.what());
  }
}

Session load_session(const RunConfig& cfg) {
  auto onto = located(cfg.ontology_path, [&] {
    return ontosem::Ontology::load(read_file(cfg.ontology_path));
  });
  auto lex = located(cfg.lexicon_path, [&] {
    return ontosem::Lexicon::load(read_file(cfg.lexicon_path), onto);
  });
  return Session{std::move(onto), std::move(lex)};
}

ontosem::TypeTerm parse_type_arg(std::string tok) {
  auto mode = ontosem::Mode::Actual;
  if (tok.size() > 2 && tok.compare(tok.size() - 2, 2, "^a") == 0) {
    mode = ontosem::Mode::Abstract;
    tok.resize(tok.size() - 2);
  }
  return {std::move(tok), mode};
}

bool is_anomalous(const ontosem::LogicalForm& f) {
  return f.status == ontosem::FormStatus::Anomalous;
}

bool any_anomalous(const std::vector<ontosem::Reading>& rs) {
  return std::any_of(rs.begin(), rs.end(),
                     [](const ontosem::Reading& r) { return is_anomalous(r.lf); });
}

void print_text_block(const std::vector<ontosem::Reading>& rs, bool trace,
                      std::ostream& out) {
  for (const auto& r : rs) {
    out << ontosem::serialize(r.lf) << "\n";
    for (const auto& note : r.notes) out << "note: " << note << "\n";
    if (is_anomalous(r.lf) && r.lf.anomaly)
      out << "anomalous: (" << r.lf.anomaly->first << " • "
          << r.lf.anomaly->second << ")\n";
    if (trace)
      for (const auto& step : ontosem::render_trace(r.trace))
        out << "  " << step << "\n";
  }
}

void print_jsonl_record(const std::string& input,
                        const std::vector<ontosem::Reading>& rs, bool trace,
                        std::ostream& out) {
  nlohmann::ordered_json rec;
  rec["input"] = input;
  auto readings = nlohmann::ordered_json::array();
  for (const auto& r : rs) readings.push_back(ontosem::serialize(r.lf));
  rec["readings"] = std::move(readings);
  rec["anomalous"] = any_anomalous(rs);
  std::vector<std::string> steps;
  if (trace)
    for (const auto& r : rs)
      for (auto& line : ontosem::render_trace(r.trace)) steps.push_back(std::move(line));
  rec["trace"] = steps;
  out << rec.dump() << "\n";
}

int cmd_analyze(const RunConfig& cfg, std::vector<std::string> sentences,
                const std::string& file) {
  Session s = load_session(cfg);
  if (!file.empty()) {
    std::istringstream in(read_file(file));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      sentences.push_back(line);
    }
  }
  if (sentences.empty()) throw ontosem::Error("no sentences given");

  int rc = 0;
  bool first = true;
  for (const auto& text : sentences) {
    try {
      auto rs = ontosem::analyze(s.onto, s.lex, text, compose_mode(cfg));
      if (cfg.format == "jsonl") {
        print_jsonl_record(text, rs, cfg.trace, std::cout);
      } else {
        if (!first) std::cout << "\n";
        print_text_block(rs, cfg.trace, std::cout);
      }
      if (any_anomalous(rs)) rc = std::max(rc, 1);
    } catch (const ontosem::Error& e) {
      std::cerr << "error: " << text << ": " << e.what() << "\n";
      rc = 2;
    }
    first = false;
  }
  return rc;
}

void repl_help(std::ostream& out) {
  out << "commands: :trace on|off  :mode plain|reified  :assume <var> <type>  :quit\n";
}

int cmd_repl(RunConfig cfg) {
  Session s = load_session(cfg);
  std::optional<ontosem::Reading> last;
  std::string line;
  std::cout << "ontosem> " << std::flush;
  while (std::getline(std::cin, line)) {
    // trim
    auto b = line.find_first_not_of(" \t\r");
    auto e = line.find_last_not_of(" \t\r");
    line = (b == std::string::npos) ? "" : line.substr(b, e - b + 1);

    if (line.empty()) {
      std::cout << "ontosem> " << std::flush;
      continue;
    }
    if (line[0] == ':') {
      std::istringstream in(line);
      std::string cmd, a1, a2;
      in >> cmd >> a1 >> a2;
      if (cmd == ":quit") break;
      if (cmd == ":help") {
        repl_help(std::cout);
      } else if (cmd == ":trace" && (a1 == "on" || a1 == "off")) {
        cfg.trace = (a1 == "on");
      } else if (cmd == ":mode" && (a1 == "plain" || a1 == "reified")) {
        cfg.mode = a1;
      } else if (cmd == ":assume" && !a1.empty() && !a2.empty()) {
        if (!last) {
          std::cerr << "error: nothing analyzed yet\n";
        } else {
          try {
            auto res = ontosem::reunify_with_constraint(s.onto, last->lf, a1,
                                                        parse_type_arg(a2));
            last->lf = std::move(res.form);
            last->trace = std::move(res.trace);
            last->notes = std::move(res.warnings);
            print_text_block({*last}, cfg.trace, std::cout);
          } catch (const ontosem::Error& err) {
            std::cerr << "error: " << err.what() << "\n";
          }
        }
      } else {
        std::cerr << "error: unrecognized command '" << line << "'\n";
        repl_help(std::cerr);
      }
    } else {
      try {
        auto rs = ontosem::analyze(s.onto, s.lex, line, compose_mode(cfg));
        print_text_block(rs, cfg.trace, std::cout);
        last = std::move(rs.front());
      } catch (const ontosem::Error& err) {
        std::cerr << "error: " << err.what() << "\n";
      }
    }
    std::cout << "ontosem> " << std::flush;
  }
  return 0;
}

// Golden comparison is insensitive to variable naming: both sides are
// re-serialized with displays assigned v1, v2, ... in prefix order.
std::string canonical(const std::string& serialized) {
  auto f = ontosem::parse_lf(serialized);
  int i = 0;
  for (auto& q : f.prefix) q.display = "v" + std::to_string(++i);
  return ontosem::serialize(f);
}

struct GoldenCase {
  int line = 0;
  std::string sentence;
  std::string expected;
  bool reified = false;
};

int cmd_golden(const RunConfig& cfg, const std::string& path) {
  Session s = load_session(cfg);
  std::istringstream in(read_file(path));

  std::vector<GoldenCase> cases;
  std::vector<std::string> malformed;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
      malformed.push_back(path + ":" + std::to_string(lineno) +
                          ": malformed line (want sentence<TAB>form)");
      continue;
    }
    GoldenCase c;
    c.line = lineno;
    c.sentence = line.substr(0, tab);
    c.expected = line.substr(tab + 1);
    const std::string prefix = "reified: ";
    if (c.sentence.rfind(prefix, 0) == 0) {
      c.reified = true;
      c.sentence = c.sentence.substr(prefix.size());
    }
    try {
      canonical(c.expected);
    } catch (const ontosem::Error& e) {
      malformed.push_back(path + ":" + std::to_string(lineno) +
                          ": bad expected form: " + e.what());
      continue;
    }
    cases.push_back(std::move(c));
  }
  if (!malformed.empty()) {
    for (const auto& m : malformed) std::cerr << m << "\n";
    return 2;
  }

  int passed = 0, failed = 0;
  for (const auto& c : cases) {
    auto mode = c.reified ? ontosem::ComposeMode::Reified
                          : compose_mode(cfg);
    std::string verdict_suffix;
    bool ok = false;
    try {
      auto rs = ontosem::analyze(s.onto, s.lex, c.sentence, mode);
      auto actual = canonical(ontosem::serialize(rs.front().lf));
      auto expected = canonical(c.expected);
      ok = (actual == expected);
      if (!ok)
        verdict_suffix = "\n  expected: " + expected + "\n  actual:   " + actual;
    } catch (const ontosem::Error& e) {
      verdict_suffix = std::string("\n  error: ") + e.what();
    }
    if (ok) {
      ++passed;
      std::cout << "ok " << c.line << ": " << c.sentence << "\n";
    } else {
      ++failed;
      std::cout << "FAIL " << c.line << ": " << c.sentence << verdict_suffix << "\n";
    }
  }
  std::cout << passed << "/" << cases.size() << " passed";
  if (failed > 0) std::cout << ", " << failed << " failed";
  if (cases.empty()) std::cout << " (0 cases)";
  std::cout << "\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::string data_dir = ONTOSEM_DATA_DIR;
  RunConfig cfg;
  cfg.ontology_path = data_dir + "/ontology.ont";
  cfg.lexicon_path = data_dir + "/lexicon.lex";

  CLI::App app{"typed-ontology sentence analyzer"};
  app.require_subcommand(1);
  app.add_option("--ontology", cfg.ontology_path, "ontology file")
      ->capture_default_str();
  app.add_option("--lexicon", cfg.lexicon_path, "lexicon file")
      ->capture_default_str();
  app.add_option("--mode", cfg.mode, "composition mode")
      ->check(CLI::IsMember({"plain", "reified"}))
      ->capture_default_str();
  app.add_flag("--trace", cfg.trace, "print unification traces");
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"text", "jsonl"}))
      ->capture_default_str();

  std::vector<std::string> sentences;
  std::string sentence_file;
  auto* analyze = app.add_subcommand("analyze", "analyze sentences");
  analyze->add_option("sentence", sentences, "sentences to analyze");
  analyze->add_option("--file", sentence_file, "file with one sentence per line");

  auto* repl = app.add_subcommand("repl", "interactive loop");

  std::string golden_path = data_dir + "/golden.tsv";
  auto* golden = app.add_subcommand("golden", "run the golden corpus");
  golden->add_option("file", golden_path, "golden TSV file")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage is a load/parse error; --help is not
  }

  try {
    if (analyze->parsed()) return cmd_analyze(cfg, std::move(sentences), sentence_file);
    if (repl->parsed()) return cmd_repl(cfg);
    if (golden->parsed()) return cmd_golden(cfg, golden_path);
  } catch (const ontosem::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
