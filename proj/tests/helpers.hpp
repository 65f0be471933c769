#pragma once

// Shared fixtures: the reference ontology/lexicon shipped in data/.

#include <ontosem/ontosem.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace testutil {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name) {
  return std::string(ONTOSEM_DATA_DIR) + "/" + name;
}

inline const ontosem::Ontology& ref_ontology() {
  static const ontosem::Ontology o =
      ontosem::Ontology::load(slurp(data_path("ontology.ont")));
  return o;
}

inline const ontosem::Lexicon& ref_lexicon() {
  static const ontosem::Lexicon l =
      ontosem::Lexicon::load(slurp(data_path("lexicon.lex")), ref_ontology());
  return l;
}

}  // namespace testutil
