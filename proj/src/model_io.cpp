#include "actp/model_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace actp {

using json = nlohmann::ordered_json;

namespace {

json matrix_to_json(const std::vector<double>& m, int rows, int cols) {
    json out = json::array();
    for (int r = 0; r < rows; ++r) {
        json row = json::array();
        for (int c = 0; c < cols; ++c) row.push_back(m[static_cast<std::size_t>(r) * cols + c]);
        out.push_back(std::move(row));
    }
    return out;
}

std::vector<double> matrix_from_json(const json& j, int rows, int cols, const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw std::invalid_argument(what + ": expected " + std::to_string(rows) + " rows");
    std::vector<double> m;
    m.reserve(static_cast<std::size_t>(rows) * cols);
    for (const auto& row : j) {
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw std::invalid_argument(what + ": expected " + std::to_string(cols) + " columns");
        for (const auto& v : row) m.push_back(v.get<double>());
    }
    return m;
}

json reward_to_json(const Reward& r, int num_states, int num_sensors) {
    json out;
    if (const auto* tr = std::get_if<TangentRewardSet>(&r)) {
        out["type"] = "tangent";
        json vecs = json::array();
        for (const auto& a : tr->vectors) vecs.push_back(a.values);
        out["vectors"] = std::move(vecs);
        json pts = json::array();
        for (const auto& b : tr->tangent_points) pts.push_back(b);
        out["tangent_points"] = std::move(pts);
    } else if (const auto* ir = std::get_if<IRRewardMatrix>(&r)) {
        out["type"] = "ir";
        out["matrix"] = matrix_to_json(ir->values, num_states, ir->num_predictions);
    } else {
        const auto& sr = std::get<StateReward>(r);
        out["type"] = "state";
        out["sensor_values"] = matrix_to_json(sr.sensor_values, num_states, num_sensors);
    }
    return out;
}

Reward reward_from_json(const json& j, int num_states, int num_sensors) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "tangent") {
        TangentRewardSet tr;
        for (const auto& v : j.at("vectors")) {
            AlphaVector a;
            a.values = v.get<std::vector<double>>();
            tr.vectors.push_back(std::move(a));
        }
        if (j.contains("tangent_points"))
            for (const auto& p : j.at("tangent_points"))
                tr.tangent_points.push_back(p.get<Belief>());
        return tr;
    }
    if (type == "ir") {
        IRRewardMatrix ir;
        const auto& m = j.at("matrix");
        if (!m.is_array() || m.empty() || !m[0].is_array())
            throw std::invalid_argument("reward.matrix: expected a 2-d array");
        ir.num_predictions = static_cast<int>(m[0].size());
        ir.values = matrix_from_json(m, num_states, ir.num_predictions, "reward.matrix");
        return ir;
    }
    if (type == "state") {
        StateReward sr;
        sr.num_sensors = num_sensors;
        sr.sensor_values =
            matrix_from_json(j.at("sensor_values"), num_states, num_sensors, "reward.sensor_values");
        return sr;
    }
    throw std::invalid_argument("unknown reward type: " + type);
}

}  // namespace

ActivePerceptionModel model_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("model file is not valid JSON: ") + e.what());
    }
    if (j.value("format", "") != "actp-model-v1")
        throw std::invalid_argument("model file: missing or unknown format tag");
    ActivePerceptionModel m;
    m.num_states = j.at("num_states").get<int>();
    m.num_sensors = j.at("num_sensors").get<int>();
    m.budget = j.at("budget").get<int>();
    m.discount = j.at("discount").get<double>();
    m.horizon = j.at("horizon").get<int>();
    m.initial_belief = j.at("initial_belief").get<Belief>();
    m.transition = matrix_from_json(j.at("transition"), m.num_states, m.num_states, "transition");
    m.transition_active =
        j.contains("transition_active")
            ? matrix_from_json(j.at("transition_active"), m.num_states, m.num_states,
                               "transition_active")
            : m.transition;
    for (const auto& cj : j.at("observation_channels")) {
        ObservationChannel ch;
        const auto& mat = cj.at("matrix");
        if (!mat.is_array() || mat.empty() || !mat[0].is_array())
            throw std::invalid_argument("observation channel: expected a 2-d array");
        ch.num_symbols = static_cast<int>(mat[0].size());
        ch.probs = matrix_from_json(mat, m.num_states, ch.num_symbols, "observation channel");
        m.channels.push_back(std::move(ch));
    }
    m.reward = reward_from_json(j.at("reward"), m.num_states, m.num_sensors);
    m.validate();
    return m;
}

std::string model_to_json_text(const ActivePerceptionModel& m) {
    json j;
    j["format"] = "actp-model-v1";
    j["num_states"] = m.num_states;
    j["num_sensors"] = m.num_sensors;
    j["budget"] = m.budget;
    j["discount"] = m.discount;
    j["horizon"] = m.horizon;
    j["initial_belief"] = m.initial_belief;
    j["transition"] = matrix_to_json(m.transition, m.num_states, m.num_states);
    if (m.has_action_dependent_transition())
        j["transition_active"] = matrix_to_json(m.transition_active, m.num_states, m.num_states);
    json chans = json::array();
    for (const auto& ch : m.channels) {
        json cj;
        cj["matrix"] = matrix_to_json(ch.probs, m.num_states, ch.num_symbols);
        chans.push_back(std::move(cj));
    }
    j["observation_channels"] = std::move(chans);
    j["reward"] = reward_to_json(m.reward, m.num_states, m.num_sensors);
    return j.dump(2) + "\n";
}

ActivePerceptionModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json_text(buf.str());
}

void save_model(const ActivePerceptionModel& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write model file: " + path);
    out << model_to_json_text(m);
}

namespace {

json stage_to_json(const ValueFunction& vf) {
    json sj;
    sj["stage"] = vf.stage;
    json vecs = json::array();
    for (const auto& a : vf.vectors) {
        json vj;
        vj["values"] = a.values;
        vj["sensors"] = a.normal_action;
        if (a.prediction_action)
            vj["prediction"] = *a.prediction_action;
        else
            vj["prediction"] = nullptr;
        vecs.push_back(std::move(vj));
    }
    sj["vectors"] = std::move(vecs);
    return sj;
}

ValueFunction stage_from_json(const json& sj) {
    ValueFunction vf;
    vf.stage = sj.at("stage").get<int>();
    for (const auto& vj : sj.at("vectors")) {
        AlphaVector a;
        a.values = vj.at("values").get<std::vector<double>>();
        a.normal_action = vj.at("sensors").get<SensorSet>();
        if (vj.contains("prediction") && !vj.at("prediction").is_null())
            a.prediction_action = vj.at("prediction").get<int>();
        vf.vectors.push_back(std::move(a));
    }
    return vf;
}

}  // namespace

std::string value_functions_to_json_text(const std::vector<ValueFunction>& stages,
                                         const std::string& manifest_json) {
    json j;
    j["format"] = "actp-vf-v1";
    json sj = json::array();
    for (const auto& vf : stages) sj.push_back(stage_to_json(vf));
    j["stages"] = std::move(sj);
    if (!manifest_json.empty()) j["manifest"] = json::parse(manifest_json);
    return j.dump(2) + "\n";
}

void save_value_functions(const std::vector<ValueFunction>& stages, const std::string& path,
                          const std::string& manifest_json) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write value function file: " + path);
    out << value_functions_to_json_text(stages, manifest_json);
}

std::vector<ValueFunction> load_value_functions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open value function file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("value function file is not valid JSON: ") + e.what());
    }
    if (j.value("format", "") != "actp-vf-v1")
        throw std::invalid_argument("value function file: missing or unknown format tag");
    std::vector<ValueFunction> stages;
    for (const auto& sj : j.at("stages")) stages.push_back(stage_from_json(sj));
    if (stages.empty()) throw std::invalid_argument("value function file has no stages");
    return stages;
}

ValueFunction load_value_function(const std::string& path) {
    return load_value_functions(path).back();
}

void save_value_function(const ValueFunction& vf, const std::string& path,
                         const std::string& manifest_json) {
    save_value_functions({vf}, path, manifest_json);
}

}  // namespace actp
