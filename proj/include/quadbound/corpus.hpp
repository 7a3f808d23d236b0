#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "quadbound/expr.hpp"
#include "quadbound/model.hpp"

namespace quadbound {

inline constexpr int kCorpusSchema = 1;

/// A FunctionSpec whose expressions have been parsed and whose derivative has
/// passed validation.
struct CompiledFunction {
    FunctionSpec spec;
    Expr f;
    Expr fprime;
};

struct Corpus {
    std::vector<CompiledFunction> functions;
};

/// Parses a corpus document:
///
///   {"schema": 1,
///    "functions": [{"name": ..., "f": ..., "fprime": ..., "domain_b": ...,
///                   "claims": [{"alpha": ..., "m": ..., "q": ...}], "f4_sup": ...}]}
///
/// Throws InputError for malformed JSON, schema violations, duplicate names,
/// unparsable expressions or a derivative that fails validation.
Corpus parse_corpus(std::string_view json_text);

Corpus load_corpus(const std::filesystem::path& path);

/// The five-function corpus shipped as data/demo_corpus.json.
std::string_view demo_corpus_json();
Corpus demo_corpus();

} // namespace quadbound
