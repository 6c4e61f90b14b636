#pragma once

#include <string>
#include <utility>
#include <vector>

#include "piconn/io.hpp"
#include "piconn/structure.hpp"
#include "piconn/tensor.hpp"

namespace testutil {

inline piconn::PiManifoldInstance load_fixture(const std::string& name) {
    return piconn::load_instance_file(std::string(FIXTURE_DIR) + "/" + name);
}

inline std::string fixture_path(const std::string& name) {
    return std::string(FIXTURE_DIR) + "/" + name;
}

struct Component {
    std::vector<int> index;
    std::string value;
};

inline piconn::Tensor make_tensor(const piconn::PiManifoldInstance& inst,
                                  std::vector<piconn::Slot> slots,
                                  const std::vector<Component>& components) {
    piconn::Tensor t(inst.dim(), std::move(slots));
    for (const auto& c : components) t.at(c.index) = piconn::parse_scalar(c.value, inst.params());
    return t;
}

inline int nonzero_count(const piconn::Tensor& t) {
    int count = 0;
    std::vector<int> index(static_cast<size_t>(t.rank()), 0);
    do {
        if (!t.at(index).is_zero()) ++count;
    } while (piconn::next_index(index, t.dim()));
    return count;
}

// The connection-coefficient table of the five-dimensional worked example:
// entry (i,j,k) is the e_k-coefficient of the derivative of e_j along e_i.
inline std::vector<Component> example_connection_components() {
    return {
        {{0, 1, 2}, "-m1"}, {{0, 1, 4}, "-m2"}, {{1, 0, 2}, "-m1"}, {{1, 0, 4}, "-m2"},
        {{0, 2, 1}, "m1"},  {{0, 2, 3}, "m2"},  {{2, 0, 1}, "m1"},  {{2, 0, 3}, "m2"},
        {{0, 3, 2}, "-m2"}, {{0, 3, 4}, "-m1"}, {{3, 0, 2}, "-m2"}, {{3, 0, 4}, "-m1"},
        {{0, 4, 1}, "m2"},  {{0, 4, 3}, "m1"},  {{4, 0, 1}, "m2"},  {{4, 0, 3}, "m1"},
        {{1, 1, 2}, "-l1"}, {{1, 1, 4}, "-l3"}, {{3, 3, 2}, "-l1"}, {{3, 3, 4}, "-l3"},
        {{1, 3, 2}, "-l3"}, {{1, 3, 4}, "-l1"}, {{3, 1, 2}, "-l3"}, {{3, 1, 4}, "-l1"},
        {{2, 2, 1}, "l2"},  {{2, 2, 3}, "l4"},  {{4, 4, 1}, "l2"},  {{4, 4, 3}, "l4"},
        {{2, 4, 1}, "l4"},  {{2, 4, 3}, "l2"},  {{4, 2, 1}, "l4"},  {{4, 2, 3}, "l2"},
        {{1, 2, 1}, "l1"},  {{1, 2, 3}, "l3"},  {{1, 2, 0}, "m1"},
        {{3, 4, 1}, "l1"},  {{3, 4, 3}, "l3"},  {{3, 4, 0}, "m1"},
        {{2, 1, 2}, "-l2"}, {{2, 1, 4}, "-l4"}, {{2, 1, 0}, "-m1"},
        {{4, 3, 2}, "-l2"}, {{4, 3, 4}, "-l4"}, {{4, 3, 0}, "-m1"},
        {{1, 4, 1}, "l3"},  {{1, 4, 3}, "l1"},  {{1, 4, 0}, "m2"},
        {{3, 2, 1}, "l3"},  {{3, 2, 3}, "l1"},  {{3, 2, 0}, "m2"},
        {{4, 1, 2}, "-l4"}, {{4, 1, 4}, "-l2"}, {{4, 1, 0}, "-m2"},
        {{2, 3, 2}, "-l4"}, {{2, 3, 4}, "-l2"}, {{2, 3, 0}, "-m2"},
    };
}

inline std::vector<Component> example_F_components() {
    return {
        {{1, 0, 4}, "m1"},  {{1, 4, 0}, "m1"},  {{3, 0, 2}, "m1"},  {{3, 2, 0}, "m1"},
        {{2, 0, 3}, "-m1"}, {{2, 3, 0}, "-m1"}, {{4, 0, 1}, "-m1"}, {{4, 1, 0}, "-m1"},
        {{1, 0, 2}, "m2"},  {{1, 2, 0}, "m2"},  {{3, 0, 4}, "m2"},  {{3, 4, 0}, "m2"},
        {{2, 0, 1}, "-m2"}, {{2, 1, 0}, "-m2"}, {{4, 0, 3}, "-m2"}, {{4, 3, 0}, "-m2"},
    };
}

inline std::vector<Component> example_T1_components() {
    return {
        {{1, 0, 2}, "m1"},  {{0, 2, 1}, "m1"},  {{3, 0, 4}, "m1"},  {{0, 4, 3}, "m1"},
        {{2, 1, 0}, "2*m1"}, {{4, 3, 0}, "2*m1"},
        {{0, 1, 2}, "-m1"}, {{2, 0, 1}, "-m1"}, {{0, 3, 4}, "-m1"}, {{4, 0, 3}, "-m1"},
        {{1, 2, 0}, "-2*m1"}, {{3, 4, 0}, "-2*m1"},
        {{1, 0, 4}, "m2"},  {{0, 2, 3}, "m2"},  {{3, 0, 2}, "m2"},  {{0, 4, 1}, "m2"},
        {{4, 1, 0}, "2*m2"}, {{2, 3, 0}, "2*m2"},
        {{0, 1, 4}, "-m2"}, {{3, 2, 0}, "-2*m2"}, {{0, 3, 2}, "-m2"}, {{4, 0, 1}, "-m2"},
        {{1, 4, 0}, "-2*m2"}, {{2, 0, 3}, "-m2"},
    };
}

inline std::vector<Component> example_T2_components() {
    return {
        {{2, 1, 0}, "2*m1"},  {{4, 3, 0}, "2*m1"},
        {{1, 2, 0}, "-2*m1"}, {{3, 4, 0}, "-2*m1"},
        {{4, 1, 0}, "2*m2"},  {{2, 3, 0}, "2*m2"},
        {{1, 4, 0}, "-2*m2"}, {{3, 2, 0}, "-2*m2"},
    };
}

inline std::vector<Component> example_N_components() {
    return {
        {{1, 2, 0}, "4*m1"},  {{3, 4, 0}, "4*m1"},
        {{2, 1, 0}, "-4*m1"}, {{4, 3, 0}, "-4*m1"},
        {{1, 4, 0}, "4*m2"},  {{3, 2, 0}, "4*m2"},
        {{2, 3, 0}, "-4*m2"}, {{4, 1, 0}, "-4*m2"},
    };
}

inline std::vector<Component> example_d_eta_components() {
    return {
        {{1, 2}, "-2*m1"}, {{2, 1}, "2*m1"}, {{3, 4}, "-2*m1"}, {{4, 3}, "2*m1"},
        {{1, 4}, "-2*m2"}, {{4, 1}, "2*m2"}, {{2, 3}, "2*m2"},  {{3, 2}, "-2*m2"},
    };
}

// The first natural connection of the worked example: the vertical direction
// keeps its derivatives, every derivative of the vertical field vanishes,
// and horizontal derivatives lose their vertical component.
inline std::vector<Component> example_D1_components() {
    std::vector<Component> out;
    for (const auto& c : example_connection_components()) {
        const bool of_vertical = c.index[1] == 0;             // derivative of e0
        const bool vertical_part = c.index[0] != 0 && c.index[2] == 0;
        if (of_vertical && c.index[0] != 0) continue;
        if (vertical_part) continue;
        out.push_back(c);
    }
    return out;
}

}  // namespace testutil
