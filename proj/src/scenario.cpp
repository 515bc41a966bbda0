#include <mixmult/scenario.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace mixmult
{

using nlohmann::json;

std::string to_string(TaskOp op)
{
    switch (op) {
    case TaskOp::colength:
        return "colength";
    case TaskOp::mult:
        return "mult";
    case TaskOp::mixed:
        return "mixed";
    case TaskOp::filtration_mixed:
        return "filtration-mixed";
    case TaskOp::sweep:
        return "sweep";
    case TaskOp::verify:
        return "verify";
    case TaskOp::zero_check:
        return "zero-check";
    case TaskOp::suite:
        return "suite";
    }
    return "unknown";
}

TaskOp parse_task_op(const std::string &name)
{
    for (auto op : {TaskOp::colength, TaskOp::mult, TaskOp::mixed, TaskOp::filtration_mixed, TaskOp::sweep,
                    TaskOp::verify, TaskOp::zero_check, TaskOp::suite}) {
        if (to_string(op) == name) {
            return op;
        }
    }
    throw SchemaError("unknown task op '" + name + "'");
}

namespace
{

const json &field(const json &obj, const std::string &key, const std::string &path)
{
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw SchemaError(path + ": missing field '" + key + "'");
    }
    return *it;
}

void only_keys(const json &obj, std::initializer_list<const char *> allowed, const std::string &path)
{
    if (!obj.is_object()) {
        throw SchemaError(path + ": expected an object");
    }
    for (const auto &[key, value] : obj.items()) {
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char *a) { return key == a; })) {
            throw SchemaError(path + ": unexpected field '" + key + "'");
        }
    }
}

unsigned natural(const json &v, const std::string &path)
{
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw SchemaError(path + ": expected a natural number");
    }
    const auto n = v.get<unsigned long long>();
    if (n > std::numeric_limits<unsigned>::max()) {
        throw SchemaError(path + ": value out of range");
    }
    return static_cast<unsigned>(n);
}

std::uint64_t natural64(const json &v, const std::string &path)
{
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw SchemaError(path + ": expected a natural number");
    }
    return v.get<std::uint64_t>();
}

std::string text(const json &v, const std::string &path)
{
    if (!v.is_string()) {
        throw SchemaError(path + ": expected a string");
    }
    return v.get<std::string>();
}

bool boolean(const json &v, const std::string &path)
{
    if (!v.is_boolean()) {
        throw SchemaError(path + ": expected true or false");
    }
    return v.get<bool>();
}

Rational rational(const json &v, const std::string &path)
{
    if (v.is_number_integer()) {
        return Rational(v.get<long long>());
    }
    try {
        return parse_rational(text(v, path));
    } catch (const SchemaError &) {
        throw;
    } catch (const InputError &e) {
        throw SchemaError(path + ": " + e.what());
    }
}

std::vector<std::string> names(const json &v, const std::string &path)
{
    if (!v.is_array() || v.empty()) {
        throw SchemaError(path + ": expected a nonempty array of names");
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(text(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<unsigned> naturals(const json &v, const std::string &path)
{
    if (!v.is_array() || v.empty()) {
        throw SchemaError(path + ": expected a nonempty array of naturals");
    }
    std::vector<unsigned> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(natural(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

MonomialIdeal parse_ideal(const json &v, unsigned dim, const std::string &path)
{
    only_keys(v, {"gens"}, path);
    const json &gens = field(v, "gens", path);
    if (!gens.is_array() || gens.empty()) {
        throw SchemaError(path + ".gens: expected a nonempty array of exponent vectors");
    }
    std::vector<Exponent> raw;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::string gpath = path + ".gens[" + std::to_string(i) + "]";
        if (!gens[i].is_array() || gens[i].size() != dim) {
            throw SchemaError(gpath + ": expected " + std::to_string(dim) + " naturals");
        }
        std::vector<Exponent::value_type> e;
        for (std::size_t k = 0; k < dim; ++k) {
            e.push_back(natural(gens[i][k], gpath + "[" + std::to_string(k) + "]"));
        }
        raw.emplace_back(std::move(e));
    }
    return MonomialIdeal(dim, raw);
}

FiltrationDecl parse_filtration_decl(const json &v, unsigned dim, const std::string &path)
{
    if (!v.is_object()) {
        throw SchemaError(path + ": expected an object");
    }
    FiltrationDecl d;
    try {
        d.kind = parse_filtration_kind(text(field(v, "kind", path), path + ".kind"));
    } catch (const SchemaError &) {
        throw;
    } catch (const InputError &e) {
        throw SchemaError(path + ".kind: " + e.what());
    }
    switch (d.kind) {
    case FiltrationKind::powers:
    case FiltrationKind::subpolynomial_sqrt:
        only_keys(v, {"kind", "base"}, path);
        d.base = text(field(v, "base", path), path + ".base");
        break;
    case FiltrationKind::scaled_powers:
        only_keys(v, {"kind", "base", "num", "den"}, path);
        d.base = text(field(v, "base", path), path + ".base");
        d.num = natural(field(v, "num", path), path + ".num");
        d.den = natural(field(v, "den", path), path + ".den");
        if (d.num == 0 || d.den == 0) {
            throw SchemaError(path + ": num and den must be positive");
        }
        break;
    case FiltrationKind::weighted: {
        only_keys(v, {"kind", "weights"}, path);
        const json &w = field(v, "weights", path);
        if (!w.is_array() || w.size() != dim) {
            throw SchemaError(path + ".weights: expected " + std::to_string(dim) + " rationals");
        }
        for (std::size_t i = 0; i < w.size(); ++i) {
            const std::string wpath = path + ".weights[" + std::to_string(i) + "]";
            d.weights.push_back(rational(w[i], wpath));
            if (d.weights.back() <= 0) {
                throw SchemaError(wpath + ": weights must be positive");
            }
        }
        break;
    }
    case FiltrationKind::truncation:
        only_keys(v, {"kind", "parent", "level"}, path);
        d.parent = text(field(v, "parent", path), path + ".parent");
        d.level = natural(field(v, "level", path), path + ".level");
        if (d.level == 0) {
            throw SchemaError(path + ".level: must be at least 1");
        }
        break;
    }
    return d;
}

Task parse_task(const json &v, const std::string &path)
{
    only_keys(v, {"op", "args"}, path);
    Task t;
    t.op = parse_task_op(text(field(v, "op", path), path + ".op"));
    const json empty = json::object();
    const json &args = v.contains("args") ? v["args"] : empty;
    const std::string apath = path + ".args";
    auto opt_natural = [&](const char *key, std::optional<unsigned> &out) {
        if (args.contains(key)) {
            out = natural(args[key], apath + "." + key);
        }
    };
    auto rescale_fields = [&] {
        opt_natural("horizon", t.horizon);
        opt_natural("f_cap", t.f_cap);
    };
    auto window_fields = [&] {
        opt_natural("t_start", t.t_start);
        opt_natural("width", t.width);
    };
    switch (t.op) {
    case TaskOp::colength:
        only_keys(args, {"ideal"}, apath);
        t.ideals = {text(field(args, "ideal", apath), apath + ".ideal")};
        break;
    case TaskOp::mult:
        only_keys(args, {"ideal", "t_start", "width"}, apath);
        t.ideals = {text(field(args, "ideal", apath), apath + ".ideal")};
        window_fields();
        break;
    case TaskOp::mixed:
        only_keys(args, {"ideals", "paranoid", "t_start", "width"}, apath);
        t.ideals = names(field(args, "ideals", apath), apath + ".ideals");
        if (args.contains("paranoid")) {
            t.paranoid = boolean(args["paranoid"], apath + ".paranoid");
        }
        window_fields();
        break;
    case TaskOp::verify:
        only_keys(args, {"ideals", "filtrations", "level", "horizon", "f_cap", "paranoid", "t_start", "width"}, apath);
        if (args.contains("ideals") == args.contains("filtrations")) {
            throw SchemaError(apath + ": give exactly one of 'ideals' or 'filtrations'");
        }
        if (args.contains("ideals")) {
            t.ideals = names(args["ideals"], apath + ".ideals");
        } else {
            t.filtrations = names(args["filtrations"], apath + ".filtrations");
            t.level = natural(field(args, "level", apath), apath + ".level");
            rescale_fields();
        }
        if (args.contains("paranoid")) {
            t.paranoid = boolean(args["paranoid"], apath + ".paranoid");
        }
        window_fields();
        break;
    case TaskOp::filtration_mixed:
        only_keys(args, {"filtrations", "level", "horizon", "f_cap"}, apath);
        t.filtrations = names(field(args, "filtrations", apath), apath + ".filtrations");
        t.level = natural(field(args, "level", apath), apath + ".level");
        rescale_fields();
        break;
    case TaskOp::sweep:
        only_keys(args, {"filtrations", "schedule", "horizon", "f_cap"}, apath);
        t.filtrations = names(field(args, "filtrations", apath), apath + ".filtrations");
        t.schedule = naturals(field(args, "schedule", apath), apath + ".schedule");
        rescale_fields();
        break;
    case TaskOp::zero_check:
        only_keys(args, {"filtrations", "schedule", "j", "tol", "horizon", "f_cap"}, apath);
        t.filtrations = names(field(args, "filtrations", apath), apath + ".filtrations");
        t.schedule = naturals(field(args, "schedule", apath), apath + ".schedule");
        t.j = natural(field(args, "j", apath), apath + ".j");
        t.tol = rational(field(args, "tol", apath), apath + ".tol");
        rescale_fields();
        break;
    case TaskOp::suite: {
        only_keys(args, {"r", "count", "max_exp", "seed", "force_equal", "paranoid"}, apath);
        SuiteConfig cfg;
        cfg.r = natural(field(args, "r", apath), apath + ".r");
        cfg.count = natural(field(args, "count", apath), apath + ".count");
        cfg.max_exponent = natural(field(args, "max_exp", apath), apath + ".max_exp");
        cfg.seed = natural64(field(args, "seed", apath), apath + ".seed");
        if (args.contains("force_equal")) {
            cfg.force_equal = boolean(args["force_equal"], apath + ".force_equal");
        }
        if (args.contains("paranoid")) {
            cfg.paranoid = boolean(args["paranoid"], apath + ".paranoid");
        }
        t.suite = cfg;
        break;
    }
    }
    return t;
}

void require_usable(const Scenario &s, const std::string &name, const std::string &path, bool needs_non_unit)
{
    const auto it = s.ideals.find(name);
    if (it == s.ideals.end()) {
        throw SemanticError(path + ": undeclared ideal '" + name + "'");
    }
    if (!is_m_primary(it->second)) {
        throw SemanticError(path + ": ideal '" + name + "' is not m-primary");
    }
    if (needs_non_unit && it->second.is_unit()) {
        throw SemanticError(path + ": ideal '" + name + "' is the unit ideal");
    }
}

void check_task(const Scenario &s, const Task &t, const std::string &path)
{
    for (const auto &name : t.ideals) {
        require_usable(s, name, path, t.op != TaskOp::colength);
    }
    for (const auto &name : t.filtrations) {
        if (!s.filtrations.contains(name)) {
            throw SemanticError(path + ": undeclared filtration '" + name + "'");
        }
    }
    if (t.level && *t.level == 0) {
        throw SemanticError(path + ": level must be at least 1");
    }
    for (std::size_t k = 0; k < t.schedule.size(); ++k) {
        if (t.schedule[k] == 0 || (k > 0 && t.schedule[k] <= t.schedule[k - 1])) {
            throw SemanticError(path + ": schedule must be strictly increasing positive levels");
        }
    }
    if (t.j && (*t.j == 0 || *t.j > t.filtrations.size())) {
        throw SemanticError(path + ": j out of range");
    }
    if (t.tol && *t.tol <= 0) {
        throw SemanticError(path + ": tol must be positive");
    }
    if (t.horizon && *t.horizon < 2) {
        throw SemanticError(path + ": horizon must be at least 2");
    }
    if (t.width && *t.width < 2) {
        throw SemanticError(path + ": width must be at least 2");
    }
    if (t.t_start && *t.t_start == 0) {
        throw SemanticError(path + ": t_start must be at least 1");
    }
    if (t.suite) {
        SuiteConfig cfg = *t.suite;
        cfg.dim = s.dim;
        try {
            validate(cfg);
        } catch (const InputError &e) {
            throw SemanticError(path + ": " + e.what());
        }
    }
}

} // namespace

Scenario scenario_from_json(const json &doc)
{
    only_keys(doc, {"dim", "law_horizon", "ideals", "filtrations", "tasks"}, "scenario");
    Scenario s;
    s.dim = natural(field(doc, "dim", "scenario"), "dim");
    if (s.dim == 0) {
        throw SchemaError("dim: must be at least 1");
    }
    if (doc.contains("law_horizon")) {
        s.law_horizon = natural(doc["law_horizon"], "law_horizon");
    }

    if (doc.contains("ideals")) {
        if (!doc["ideals"].is_object()) {
            throw SchemaError("ideals: expected an object");
        }
        for (const auto &[name, value] : doc["ideals"].items()) {
            s.ideals.emplace(name, parse_ideal(value, s.dim, "ideals." + name));
        }
    }
    if (doc.contains("filtrations")) {
        if (!doc["filtrations"].is_object()) {
            throw SchemaError("filtrations: expected an object");
        }
        for (const auto &[name, value] : doc["filtrations"].items()) {
            if (s.ideals.contains(name)) {
                throw SchemaError("filtrations." + name + ": name already used by an ideal");
            }
            s.filtration_decls.emplace(name, parse_filtration_decl(value, s.dim, "filtrations." + name));
        }
    }
    if (doc.contains("tasks")) {
        if (!doc["tasks"].is_array()) {
            throw SchemaError("tasks: expected an array");
        }
        for (std::size_t i = 0; i < doc["tasks"].size(); ++i) {
            s.tasks.push_back(parse_task(doc["tasks"][i], "tasks[" + std::to_string(i) + "]"));
        }
    }

    // Build filtrations in dependency order; truncations refer to other filtrations.
    std::set<std::string> in_progress;
    std::function<const Filtration &(const std::string &, const std::string &)> build =
        [&](const std::string &name, const std::string &path) -> const Filtration & {
        if (const auto it = s.filtrations.find(name); it != s.filtrations.end()) {
            return it->second;
        }
        const auto decl_it = s.filtration_decls.find(name);
        if (decl_it == s.filtration_decls.end()) {
            throw SemanticError(path + ": undeclared filtration '" + name + "'");
        }
        if (!in_progress.insert(name).second) {
            throw SemanticError(path + ": cyclic truncation through '" + name + "'");
        }
        const FiltrationDecl &d = decl_it->second;
        const std::string fpath = "filtrations." + name;
        auto base = [&]() -> const MonomialIdeal & {
            require_usable(s, d.base, fpath + ".base", true);
            return s.ideals.at(d.base);
        };
        std::optional<Filtration> f;
        switch (d.kind) {
        case FiltrationKind::powers:
            f = Filtration::powers(base());
            break;
        case FiltrationKind::scaled_powers:
            f = Filtration::scaled_powers(base(), d.num, d.den);
            break;
        case FiltrationKind::weighted:
            f = Filtration::weighted(d.weights);
            break;
        case FiltrationKind::subpolynomial_sqrt:
            f = Filtration::subpolynomial_sqrt(base());
            break;
        case FiltrationKind::truncation:
            f = build(d.parent, fpath + ".parent").truncate(d.level);
            break;
        }
        const std::string violation = check_graded_family(*f, s.law_horizon);
        if (!violation.empty()) {
            throw SemanticError(fpath + ": not a filtration by m-primary ideals: " + violation);
        }
        in_progress.erase(name);
        return s.filtrations.emplace(name, *f).first->second;
    };
    for (const auto &[name, decl] : s.filtration_decls) {
        build(name, "filtrations." + name);
    }

    for (std::size_t i = 0; i < s.tasks.size(); ++i) {
        check_task(s, s.tasks[i], "tasks[" + std::to_string(i) + "]");
    }
    return s;
}

Scenario parse_scenario(const std::string &text)
{
    // nlohmann keeps the last of repeated keys; names must be unique, so track them.
    std::vector<std::set<std::string>> open_objects;
    std::optional<std::string> duplicate;
    std::size_t duplicate_depth = 0;
    const json::parser_callback_t callback = [&](int depth, json::parse_event_t event, json &parsed) {
        switch (event) {
        case json::parse_event_t::object_start:
            open_objects.emplace_back();
            break;
        case json::parse_event_t::object_end:
            open_objects.pop_back();
            break;
        case json::parse_event_t::key:
            if (!open_objects.back().insert(parsed.get<std::string>()).second && !duplicate) {
                duplicate = parsed.get<std::string>();
                duplicate_depth = static_cast<std::size_t>(depth);
            }
            break;
        default:
            break;
        }
        return true;
    };
    json doc;
    try {
        doc = json::parse(text, callback);
    } catch (const json::parse_error &e) {
        const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw SchemaError("line " + std::to_string(line) + ": " + e.what());
    }
    if (duplicate) {
        throw SchemaError("duplicate name '" + *duplicate + "' at nesting depth " + std::to_string(duplicate_depth));
    }
    return scenario_from_json(doc);
}

Scenario parse_scenario_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw SchemaError("cannot read scenario file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

json to_json(const Task &t)
{
    json args = json::object();
    switch (t.op) {
    case TaskOp::colength:
    case TaskOp::mult:
        args["ideal"] = t.ideals.at(0);
        break;
    default:
        if (!t.ideals.empty()) {
            args["ideals"] = t.ideals;
        }
        break;
    }
    if (!t.filtrations.empty()) {
        args["filtrations"] = t.filtrations;
    }
    if (t.level) {
        args["level"] = *t.level;
    }
    if (!t.schedule.empty()) {
        args["schedule"] = t.schedule;
    }
    if (t.j) {
        args["j"] = *t.j;
    }
    if (t.tol) {
        args["tol"] = to_string(*t.tol);
    }
    if (t.horizon) {
        args["horizon"] = *t.horizon;
    }
    if (t.f_cap) {
        args["f_cap"] = *t.f_cap;
    }
    if (t.t_start) {
        args["t_start"] = *t.t_start;
    }
    if (t.width) {
        args["width"] = *t.width;
    }
    if (t.paranoid) {
        args["paranoid"] = true;
    }
    if (t.suite) {
        args["r"] = t.suite->r;
        args["count"] = t.suite->count;
        args["max_exp"] = t.suite->max_exponent;
        args["seed"] = t.suite->seed;
        if (t.suite->force_equal) {
            args["force_equal"] = true;
        }
        if (t.suite->paranoid) {
            args["paranoid"] = true;
        }
    }
    return json{{"op", to_string(t.op)}, {"args", args}};
}

json to_json(const Scenario &s)
{
    json ideals = json::object();
    for (const auto &[name, I] : s.ideals) {
        json gens = json::array();
        for (std::size_t i = 0; i < I.num_gens(); ++i) {
            const auto g = I.generator(i);
            gens.push_back(std::vector<std::uint32_t>(g.begin(), g.end()));
        }
        ideals[name] = json{{"gens", gens}};
    }
    json filtrations = json::object();
    for (const auto &[name, d] : s.filtration_decls) {
        json f{{"kind", to_string(d.kind)}};
        switch (d.kind) {
        case FiltrationKind::powers:
        case FiltrationKind::subpolynomial_sqrt:
            f["base"] = d.base;
            break;
        case FiltrationKind::scaled_powers:
            f["base"] = d.base;
            f["num"] = d.num;
            f["den"] = d.den;
            break;
        case FiltrationKind::weighted: {
            json w = json::array();
            for (const auto &q : d.weights) {
                w.push_back(to_string(q));
            }
            f["weights"] = w;
            break;
        }
        case FiltrationKind::truncation:
            f["parent"] = d.parent;
            f["level"] = d.level;
            break;
        }
        filtrations[name] = f;
    }
    json tasks = json::array();
    for (const auto &t : s.tasks) {
        tasks.push_back(to_json(t));
    }
    return json{{"dim", s.dim},
                {"law_horizon", s.law_horizon},
                {"ideals", ideals},
                {"filtrations", filtrations},
                {"tasks", tasks}};
}

} // namespace mixmult
