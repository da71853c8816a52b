#include "driftwalk/env_io.hpp"

#include <charconv>
#include <fstream>

#include <json.hpp>

namespace dwalk {

std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, ptr);
}

namespace {

nlohmann::json data_array(const std::vector<double>& values) {
    nlohmann::json arr = nlohmann::json::array();
    for (double v : values) arr.push_back(format_double(v));
    return arr;
}

void write_json(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(1) << "\n";
}

std::vector<double> parse_data(const nlohmann::json& arr) {
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& item : arr) {
        if (!item.is_string()) throw ParseError("data entries must be decimal strings");
        const std::string& s = item.get_ref<const std::string&>();
        double v = 0;
        const auto* first = s.data();
        const auto* last = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last)
            throw ParseError("bad numeric literal in data: '" + s + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

void save_environment(const DriftField& v, const std::string& path) {
    nlohmann::json j;
    j["dims"] = {{"d", v.lattice().dim()}, {"L", v.lattice().side()}};
    j["kind"] = "drift";
    j["data"] = data_array(v.data());
    write_json(j, path);
}

void save_environment(const StreamTensorField& h, const std::string& path) {
    nlohmann::json j;
    j["dims"] = {{"d", h.lattice().dim()}, {"L", h.lattice().side()}};
    j["kind"] = "stream";
    j["data"] = data_array(h.data());
    write_json(j, path);
}

Environment load_environment(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    if (!j.contains("dims") || !j.contains("kind") || !j.contains("data"))
        throw ParseError(path + ": missing dims/kind/data");
    int d = 0, L = 0;
    try {
        d = j["dims"].at("d").get<int>();
        L = j["dims"].at("L").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": bad dims: " + e.what());
    }
    Lattice lat(d, L);
    const std::string kind = j["kind"].get<std::string>();
    std::vector<double> data = parse_data(j["data"]);

    if (kind == "drift") {
        if (data.size() != static_cast<std::size_t>(lat.nsites() * lat.dim()))
            throw ParseError(path + ": drift data size mismatch");
        DriftField v(lat, std::move(data));
        ValidationReport rep = validate_drift(v);
        if (!rep.all_pass())
            throw ValidationError(path + ": drift field invalid\n" + rep.summary(), rep);
        return v;
    }
    if (kind == "stream") {
        if (data.size() != static_cast<std::size_t>(lat.nsites() * lat.npairs()))
            throw ParseError(path + ": stream data size mismatch");
        StreamTensorField h(lat, std::move(data));
        ValidationReport rep = validate_stream(h);
        if (!rep.all_pass())
            throw ValidationError(path + ": stream tensor invalid\n" + rep.summary(), rep);
        return h;
    }
    throw ParseError(path + ": unknown kind '" + kind + "'");
}

DriftField load_drift(const std::string& path) {
    Environment env = load_environment(path);
    if (auto* v = std::get_if<DriftField>(&env)) return std::move(*v);
    // A stream tensor is also accepted: its curl is the drift it encodes.
    return curl(std::get<StreamTensorField>(env));
}

}  // namespace dwalk
