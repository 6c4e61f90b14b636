#include "piconn/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace piconn {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& origin, const std::string& what) {
    throw InputError(origin + ": " + what);
}

ordered_json parse_document(std::istream& in, const std::string& origin) {
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(origin + ": " + e.what());
    }
}

const ordered_json& field(const ordered_json& doc, const std::string& key,
                          const std::string& origin) {
    auto it = doc.find(key);
    if (it == doc.end()) bad(origin, "missing field \"" + key + "\"");
    return *it;
}

// Coefficients may be expression strings or plain JSON integers.
std::string coefficient_text(const ordered_json& value, const std::string& origin,
                             const std::string& where) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_integer()) return std::to_string(value.get<long long>());
    bad(origin, where + ": coefficient must be a string or an integer");
}

Scalar parse_coefficient(const ordered_json& value, const ParamTablePtr& params,
                         const std::string& origin, const std::string& where) {
    const std::string text = coefficient_text(value, origin, where);
    try {
        return parse_scalar(text, params);
    } catch (const ScalarParseError& e) {
        bad(origin, where + ": " + e.what());
    }
}

class LabelIndex {
  public:
    LabelIndex(const std::vector<std::string>& basis, std::string origin)
        : origin_(std::move(origin)) {
        for (size_t i = 0; i < basis.size(); ++i) index_.emplace(basis[i], static_cast<int>(i));
    }

    int of(const std::string& label, const std::string& where) const {
        auto it = index_.find(label);
        if (it == index_.end()) bad(origin_, where + ": unknown basis label \"" + label + "\"");
        return it->second;
    }

  private:
    std::string origin_;
    std::map<std::string, int> index_;
};

// Reads one label->coefficient object into a coordinate column.
Vec read_column(const ordered_json& obj, int dim, const LabelIndex& labels,
                const ParamTablePtr& params, const std::string& origin,
                const std::string& where) {
    if (!obj.is_object()) bad(origin, where + ": expected an object");
    Vec v = zero_vec(dim);
    for (const auto& [label, value] : obj.items()) {
        const int i = labels.of(label, where);
        v[static_cast<size_t>(i)] = parse_coefficient(value, params, origin, where + "." + label);
    }
    return v;
}

// Reads a column-keyed matrix object: outer keys select columns (images of
// basis vectors for phi) or rows (for the symmetric metric); since the
// metric must be symmetric anyway we store outer=column uniformly.
Mat read_matrix(const ordered_json& obj, int dim, const LabelIndex& labels,
                const ParamTablePtr& params, const std::string& origin,
                const std::string& where) {
    if (!obj.is_object()) bad(origin, where + ": expected an object");
    Mat m(dim, dim);
    for (const auto& [col_label, col] : obj.items()) {
        const int c = labels.of(col_label, where);
        if (!col.is_object()) bad(origin, where + "." + col_label + ": expected an object");
        for (const auto& [row_label, value] : col.items()) {
            const int r = labels.of(row_label, where + "." + col_label);
            m.at(r, c) = parse_coefficient(value, params, origin,
                                           where + "." + col_label + "." + row_label);
        }
    }
    return m;
}

}  // namespace

PiManifoldInstance load_instance(std::istream& in, const std::string& origin) {
    const ordered_json doc = parse_document(in, origin);
    if (!doc.is_object()) bad(origin, "top-level value must be an object");

    const ordered_json& dim_field = field(doc, "dimension", origin);
    if (!dim_field.is_number_integer() || dim_field.get<long long>() < 1)
        bad(origin, "\"dimension\" must be a positive integer");
    const int dim = dim_field.get<int>();
    if (dim % 2 == 0) bad(origin, "\"dimension\" must be odd (2n+1)");

    const ordered_json& params_field = field(doc, "parameters", origin);
    if (!params_field.is_array()) bad(origin, "\"parameters\" must be an array");
    std::vector<std::string> param_names;
    for (const auto& p : params_field) {
        if (!p.is_string()) bad(origin, "\"parameters\" entries must be strings");
        param_names.push_back(p.get<std::string>());
    }
    {
        std::set<std::string> seen(param_names.begin(), param_names.end());
        if (seen.size() != param_names.size()) bad(origin, "duplicate parameter name");
    }
    ParamTablePtr params = make_param_table(param_names);

    const ordered_json& basis_field = field(doc, "basis", origin);
    if (!basis_field.is_array()) bad(origin, "\"basis\" must be an array");
    std::vector<std::string> basis;
    for (const auto& b : basis_field) {
        if (!b.is_string()) bad(origin, "\"basis\" entries must be strings");
        basis.push_back(b.get<std::string>());
    }
    if (static_cast<int>(basis.size()) != dim)
        bad(origin, "\"basis\" must list exactly " + std::to_string(dim) + " labels");
    {
        std::set<std::string> seen(basis.begin(), basis.end());
        if (seen.size() != basis.size()) bad(origin, "duplicate basis label");
    }
    const LabelIndex labels(basis, origin);

    LieAlgebraStructure algebra;
    algebra.params = params;
    algebra.basis = basis;
    algebra.c = Tensor(dim, {Slot::Lower, Slot::Lower, Slot::Upper});

    const ordered_json& brackets = field(doc, "brackets", origin);
    if (!brackets.is_array()) bad(origin, "\"brackets\" must be an array");
    std::set<std::pair<int, int>> seen_pairs;
    for (size_t b = 0; b < brackets.size(); ++b) {
        const std::string where = "brackets[" + std::to_string(b) + "]";
        const ordered_json& entry = brackets[b];
        if (!entry.is_object()) bad(origin, where + ": expected an object");
        const ordered_json& left = field(entry, "left", origin);
        const ordered_json& right = field(entry, "right", origin);
        if (!left.is_string() || !right.is_string())
            bad(origin, where + ": \"left\" and \"right\" must be basis labels");
        const int i = labels.of(left.get<std::string>(), where);
        const int j = labels.of(right.get<std::string>(), where);
        if (i == j) bad(origin, where + ": bracket of a basis vector with itself");
        const auto key = std::minmax(i, j);
        if (!seen_pairs.insert(key).second)
            bad(origin, where + ": duplicate bracket pair [" + left.get<std::string>() + "," +
                            right.get<std::string>() + "]");
        const Vec result = read_column(field(entry, "result", origin), dim, labels, params,
                                       origin, where + ".result");
        for (int k = 0; k < dim; ++k) {
            algebra.c.at(i, j, k) = result[static_cast<size_t>(k)];
            algebra.c.at(j, i, k) = -result[static_cast<size_t>(k)];
        }
    }

    PiStructure structure;
    structure.phi = read_matrix(field(doc, "phi", origin), dim, labels, params, origin, "phi");
    structure.xi = read_column(field(doc, "xi", origin), dim, labels, params, origin, "xi");
    structure.eta = read_column(field(doc, "eta", origin), dim, labels, params, origin, "eta");
    structure.g =
        read_matrix(field(doc, "metric", origin), dim, labels, params, origin, "metric");

    return PiManifoldInstance(std::move(algebra), std::move(structure));
}

PiManifoldInstance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    return load_instance(in, path);
}

Substitution load_substitution(std::istream& in, const ParamTablePtr& params,
                               const std::string& origin) {
    const ordered_json doc = parse_document(in, origin);
    if (!doc.is_object()) bad(origin, "substitution file must be a JSON object");
    std::map<std::string, Rational> bindings;
    for (const auto& [name, value] : doc.items()) {
        std::string text;
        if (value.is_string())
            text = value.get<std::string>();
        else if (value.is_number_integer())
            text = std::to_string(value.get<long long>());
        else
            bad(origin, name + ": value must be a rational string or an integer");
        try {
            bindings[name] = rational_from_string(text);
        } catch (const std::exception& e) {
            bad(origin, name + ": " + e.what());
        }
    }
    try {
        return Substitution(params, std::move(bindings));
    } catch (const std::invalid_argument& e) {
        bad(origin, e.what());
    }
}

Substitution load_substitution_file(const std::string& path, const ParamTablePtr& params) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    return load_substitution(in, params, path);
}

Substitution parse_substitution_arg(const std::string& text, const ParamTablePtr& params) {
    std::map<std::string, Rational> bindings;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        const size_t eq = item.find('=');
        if (eq == std::string::npos)
            throw InputError("--subst: expected name=value, got \"" + item + "\"");
        const std::string name = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        if (name.empty()) throw InputError("--subst: empty parameter name in \"" + item + "\"");
        if (bindings.count(name))
            throw InputError("--subst: parameter \"" + name + "\" bound twice");
        try {
            bindings[name] = rational_from_string(value);
        } catch (const std::exception& e) {
            throw InputError("--subst: " + name + ": " + e.what());
        }
    }
    try {
        return Substitution(params, std::move(bindings));
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("--subst: ") + e.what());
    }
}

nlohmann::ordered_json tensor_component_list(const Tensor& t) {
    ordered_json list = ordered_json::array();
    if (t.rank() == 0) {
        if (!t.at(std::vector<int>{}).is_zero()) {
            ordered_json item;
            item["index"] = ordered_json::array();
            item["value"] = t.at(std::vector<int>{}).to_string();
            list.push_back(std::move(item));
        }
        return list;
    }
    std::vector<int> index(static_cast<size_t>(t.rank()), 0);
    do {
        const Scalar& entry = t.at(index);
        if (entry.is_zero()) continue;
        ordered_json item;
        item["index"] = index;
        item["value"] = entry.to_string();
        list.push_back(std::move(item));
    } while (next_index(index, t.dim()));
    return list;
}

std::string tensor_to_text(const std::string& name, const Tensor& t) {
    std::ostringstream out;
    bool any = false;
    if (t.rank() == 0) {
        if (!t.at(std::vector<int>{}).is_zero()) {
            out << name << " = " << t.at(std::vector<int>{}).to_string() << '\n';
            any = true;
        }
    } else {
        std::vector<int> index(static_cast<size_t>(t.rank()), 0);
        do {
            const Scalar& entry = t.at(index);
            if (entry.is_zero()) continue;
            out << name << '[';
            for (size_t k = 0; k < index.size(); ++k) {
                if (k) out << ',';
                out << index[k];
            }
            out << "] = " << entry.to_string() << '\n';
            any = true;
        } while (next_index(index, t.dim()));
    }
    if (!any) out << name << ": all components zero\n";
    return out.str();
}

}  // namespace piconn
