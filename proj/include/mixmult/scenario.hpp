#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <mixmult/errors.hpp>
#include <mixmult/filtration.hpp>
#include <mixmult/ideal.hpp>
#include <mixmult/verify.hpp>

namespace mixmult
{

// Malformed scenario document: bad JSON, missing or mistyped fields, duplicate names.
class SchemaError : public InputError
{
public:
    using InputError::InputError;
};

// Well-formed document whose content is unusable, e.g. a non-m-primary ideal in a mult task.
class SemanticError : public InputError
{
public:
    using InputError::InputError;
};

enum class TaskOp
{
    colength,
    mult,
    mixed,
    filtration_mixed,
    sweep,
    verify,
    zero_check,
    suite,
};

std::string to_string(TaskOp op);
TaskOp parse_task_op(const std::string &name);

struct Task {
    TaskOp op = TaskOp::colength;
    std::vector<std::string> ideals;
    std::vector<std::string> filtrations;
    std::optional<unsigned> level;
    std::vector<unsigned> schedule;
    std::optional<unsigned> j;
    std::optional<Rational> tol;
    std::optional<unsigned> horizon;
    std::optional<unsigned> f_cap;
    std::optional<unsigned> t_start;
    std::optional<unsigned> width;
    bool paranoid = false;
    std::optional<SuiteConfig> suite;

    friend bool operator==(const Task &, const Task &) = default;
};

// How a filtration was declared, kept so reports can echo it verbatim.
struct FiltrationDecl {
    FiltrationKind kind = FiltrationKind::powers;
    std::string base;
    unsigned num = 1;
    unsigned den = 1;
    std::vector<Rational> weights;
    std::string parent;
    unsigned level = 0;

    friend bool operator==(const FiltrationDecl &, const FiltrationDecl &) = default;
};

struct Scenario {
    unsigned dim = 0;
    // Horizon for the eager graded-family check on every declared filtration.
    unsigned law_horizon = 8;
    std::map<std::string, MonomialIdeal> ideals;
    std::map<std::string, FiltrationDecl> filtration_decls;
    std::map<std::string, Filtration> filtrations;
    std::vector<Task> tasks;

    friend bool operator==(const Scenario &a, const Scenario &b)
    {
        return a.dim == b.dim && a.law_horizon == b.law_horizon && a.ideals == b.ideals &&
               a.filtration_decls == b.filtration_decls && a.tasks == b.tasks;
    }
};

// Parses and fully validates. Throws SchemaError (with line or field path) or SemanticError.
Scenario parse_scenario(const std::string &text);
Scenario parse_scenario_file(const std::filesystem::path &path);
Scenario scenario_from_json(const nlohmann::json &doc);

// Canonical JSON form; scenario_from_json(to_json(s)) == s.
nlohmann::json to_json(const Scenario &s);
nlohmann::json to_json(const Task &t);

} // namespace mixmult
