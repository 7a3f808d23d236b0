#include "quadbound/corpus.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "quadbound/error.hpp"

namespace quadbound {

namespace {

using nlohmann::json;

constexpr std::string_view kDemoCorpus = R"json({
  "schema": 1,
  "functions": [
    {"name": "square", "f": "x^2", "fprime": "2*x", "domain_b": 2,
     "claims": [{"alpha": 1, "m": 1, "q": 1}, {"alpha": 1, "m": 0.5, "q": 2}], "f4_sup": 0},
    {"name": "cube", "f": "x^3", "fprime": "3*x^2", "domain_b": 2,
     "claims": [{"alpha": 1, "m": 1, "q": 1}, {"alpha": 1, "m": 0.5, "q": 2}], "f4_sup": 0},
    {"name": "quartic", "f": "x^4", "fprime": "4*x^3", "domain_b": 2,
     "claims": [{"alpha": 1, "m": 1, "q": 1}, {"alpha": 1, "m": 0.5, "q": 2}], "f4_sup": 24},
    {"name": "expm1", "f": "exp(x) - 1", "fprime": "exp(x)", "domain_b": 2,
     "claims": [{"alpha": 1, "m": 1, "q": 1}, {"alpha": 1, "m": 1, "q": 3}], "f4_sup": 7.38905609893065},
    {"name": "pow52", "f": "x^(5/2)", "fprime": "5/2*x^(3/2)", "domain_b": 2,
     "claims": [{"alpha": 1, "m": 1, "q": 1}, {"alpha": 1, "m": 0.5, "q": 2}]}
  ]
}
)json";

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw InputError("corpus " + where + ": " + what);
}

double number_field(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key))
        schema_error(where, std::string("missing field '") + key + "'");
    const json& v = obj.at(key);
    if (!v.is_number())
        schema_error(where, std::string("field '") + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        schema_error(where, std::string("field '") + key + "' must be finite");
    return d;
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj.at(key).is_string())
        schema_error(where, std::string("field '") + key + "' must be a string");
    return obj.at(key).get<std::string>();
}

Expr parse_field(const std::string& src, const char* key, const std::string& where) {
    try {
        return parse(src);
    } catch (const SyntaxError& err) {
        schema_error(where, std::string("field '") + key + "': " + err.what());
    }
}

CompiledFunction compile_entry(const json& entry, std::size_t index) {
    std::string where = "entry " + std::to_string(index);
    if (!entry.is_object())
        schema_error(where, "must be an object");

    FunctionSpec spec;
    spec.name = string_field(entry, "name", where);
    if (spec.name.empty())
        schema_error(where, "name must not be empty");
    where += " ('" + spec.name + "')";
    spec.f_expr = string_field(entry, "f", where);
    spec.fprime_expr = string_field(entry, "fprime", where);
    spec.domain_b = number_field(entry, "domain_b", where);
    if (spec.domain_b <= 0.0)
        schema_error(where, "domain_b must be positive");

    if (entry.contains("claims")) {
        const json& claims = entry.at("claims");
        if (!claims.is_array())
            schema_error(where, "claims must be an array");
        for (const json& c : claims) {
            if (!c.is_object())
                schema_error(where, "each claim must be an object");
            try {
                spec.claimed.push_back(ConvexityParams::make(number_field(c, "alpha", where),
                                                             number_field(c, "m", where),
                                                             number_field(c, "q", where)));
            } catch (const ParameterError& err) {
                schema_error(where, std::string("claim: ") + err.what());
            }
        }
    }
    if (entry.contains("f4_sup")) {
        const double sup = number_field(entry, "f4_sup", where);
        if (sup < 0.0)
            schema_error(where, "f4_sup must be non-negative");
        spec.f4_sup = sup;
    }

    Expr f = parse_field(spec.f_expr, "f", where);
    Expr fprime = parse_field(spec.fprime_expr, "fprime", where);

    const DerivativeCheck check = validate_derivative(f, fprime, spec.domain_b);
    if (!check.passed) {
        std::ostringstream msg;
        msg << "fprime does not match f at x = " << check.worst_x;
        if (check.error)
            msg << ": " << *check.error;
        else
            msg << " (relative deviation " << check.worst_deviation << ")";
        schema_error(where, msg.str());
    }
    return CompiledFunction{std::move(spec), std::move(f), std::move(fprime)};
}

} // namespace

Corpus parse_corpus(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw InputError(std::string("corpus is not valid JSON: ") + err.what());
    }
    if (!doc.is_object())
        throw InputError("corpus must be a JSON object");
    if (!doc.contains("schema") || !doc.at("schema").is_number_integer()
        || doc.at("schema").get<int>() != kCorpusSchema)
        throw InputError("corpus must declare \"schema\": 1");
    if (!doc.contains("functions") || !doc.at("functions").is_array())
        throw InputError("corpus must contain a \"functions\" array");

    Corpus corpus;
    std::set<std::string> names;
    const json& entries = doc.at("functions");
    for (std::size_t i = 0; i < entries.size(); ++i) {
        CompiledFunction fn = compile_entry(entries[i], i);
        if (!names.insert(fn.spec.name).second)
            throw InputError("corpus: duplicate function name '" + fn.spec.name + "'");
        corpus.functions.push_back(std::move(fn));
    }
    return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open corpus file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    if (in.bad())
        throw InputError("cannot read corpus file " + path.string());
    return parse_corpus(text.str());
}

std::string_view demo_corpus_json() { return kDemoCorpus; }

Corpus demo_corpus() { return parse_corpus(kDemoCorpus); }

} // namespace quadbound
