#include "warebot/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace warebot::io {

namespace {

using nlohmann::json;
using world::Scenario;

void require_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw MalformedScenario(where + ": expected an object");
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) {
            throw MalformedScenario(where + ": unknown field '" + item.key() + "'");
        }
    }
}

geom::Vec2 parse_vec(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw MalformedScenario(where + ": expected [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<geom::Vec2> parse_poly(const json& j, const std::string& where) {
    if (!j.is_array()) throw MalformedScenario(where + ": expected a vertex array");
    std::vector<geom::Vec2> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(parse_vec(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

double parse_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw MalformedScenario(where + ": expected a number");
    return j.get<double>();
}

}  // namespace

world::Scenario load_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw MalformedScenario(std::string("scenario parse error: ") + e.what());
    }
    require_keys(j, {"version", "workspace", "obstacles", "objects", "robot", "params"}, "scenario");
    if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != 1) {
        throw MalformedScenario("scenario: missing or unsupported version (expected 1)");
    }
    if (!j.contains("workspace") || !j.contains("robot")) {
        throw MalformedScenario("scenario: workspace and robot are required");
    }

    Scenario s;
    s.workspace.boundary = parse_poly(j["workspace"], "workspace");

    if (j.contains("obstacles")) {
        int next_id = 1;
        for (std::size_t i = 0; i < j["obstacles"].size(); ++i) {
            const json& jo = j["obstacles"][i];
            const std::string where = "obstacles[" + std::to_string(i) + "]";
            require_keys(jo, {"id", "known", "disk", "polygon"}, where);
            world::Obstacle o;
            o.id = jo.contains("id") ? jo["id"].get<int>() : next_id;
            next_id = std::max(next_id, o.id + 1);
            o.known = jo.contains("known") && jo["known"].get<bool>();
            if (jo.contains("disk") == jo.contains("polygon")) {
                throw MalformedScenario(where + ": exactly one of disk/polygon required");
            }
            if (jo.contains("disk")) {
                require_keys(jo["disk"], {"center", "radius"}, where + ".disk");
                world::DiskShape d;
                d.center = parse_vec(jo["disk"]["center"], where + ".disk.center");
                d.radius = parse_number(jo["disk"]["radius"], where + ".disk.radius");
                o.shape = d;
            } else {
                o.shape = world::PolygonShape{parse_poly(jo["polygon"], where + ".polygon")};
            }
            s.obstacles.push_back(std::move(o));
        }
    }

    if (j.contains("objects")) {
        int next_id = 1;
        for (std::size_t i = 0; i < j["objects"].size(); ++i) {
            const json& jo = j["objects"][i];
            const std::string where = "objects[" + std::to_string(i) + "]";
            require_keys(jo, {"id", "start", "radius", "goal"}, where);
            if (!jo.contains("start") || !jo.contains("radius") || !jo.contains("goal")) {
                throw MalformedScenario(where + ": start, radius, and goal are required");
            }
            world::MovableObject o;
            o.id = jo.contains("id") ? jo["id"].get<int>() : next_id;
            next_id = std::max(next_id, o.id + 1);
            o.start = parse_vec(jo["start"], where + ".start");
            o.radius = parse_number(jo["radius"], where + ".radius");
            o.goal = parse_vec(jo["goal"], where + ".goal");
            s.objects.push_back(o);
        }
    }

    {
        const json& jr = j["robot"];
        require_keys(jr, {"start", "psi", "radius", "lidar_range"}, "robot");
        if (!jr.contains("start")) throw MalformedScenario("robot.start is required");
        s.robot_start = parse_vec(jr["start"], "robot.start");
        s.robot_psi = jr.contains("psi") ? parse_number(jr["psi"], "robot.psi") : 0.0;
        s.robot_radius = jr.contains("radius") ? parse_number(jr["radius"], "robot.radius") : 0.25;
        s.lidar_range = jr.contains("lidar_range") ? parse_number(jr["lidar_range"], "robot.lidar_range") : 5.0;
    }

    if (j.contains("params")) {
        const json& jp = j["params"];
        require_keys(jp, {"k", "eps", "delta", "h", "rays", "nest", "max_steps", "holonomic"}, "params");
        if (jp.contains("k")) s.params.k = parse_number(jp["k"], "params.k");
        if (jp.contains("eps")) s.params.eps = parse_number(jp["eps"], "params.eps");
        if (jp.contains("delta")) s.params.delta = parse_number(jp["delta"], "params.delta");
        if (jp.contains("h")) s.params.h = parse_number(jp["h"], "params.h");
        if (jp.contains("rays")) {
            if (!jp["rays"].is_number_integer()) throw MalformedScenario("params.rays: expected an integer");
            s.params.rays = jp["rays"].get<int>();
            if (s.params.rays < 8) throw MalformedScenario("params.rays: need at least 8 rays");
        }
        if (jp.contains("nest")) s.params.nest = parse_vec(jp["nest"], "params.nest");
        if (jp.contains("max_steps")) {
            if (!jp["max_steps"].is_number_integer()) throw MalformedScenario("params.max_steps: expected an integer");
            s.params.max_steps = jp["max_steps"].get<long>();
        }
        if (jp.contains("holonomic")) {
            if (!jp["holonomic"].is_boolean()) throw MalformedScenario("params.holonomic: expected a boolean");
            s.params.holonomic = jp["holonomic"].get<bool>();
        }
    }
    return s;
}

world::Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedScenario("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str());
}

std::string save_scenario(const world::Scenario& s) {
    json j;
    j["version"] = 1;
    j["workspace"] = json::array();
    for (auto v : s.workspace.boundary) j["workspace"].push_back({v.x, v.y});

    j["obstacles"] = json::array();
    for (const auto& o : s.obstacles) {
        json jo;
        jo["id"] = o.id;
        jo["known"] = o.known;
        if (std::holds_alternative<world::DiskShape>(o.shape)) {
            const auto& d = std::get<world::DiskShape>(o.shape);
            jo["disk"] = {{"center", {d.center.x, d.center.y}}, {"radius", d.radius}};
        } else {
            json poly = json::array();
            for (auto v : std::get<world::PolygonShape>(o.shape).vertices) poly.push_back({v.x, v.y});
            jo["polygon"] = poly;
        }
        j["obstacles"].push_back(jo);
    }

    j["objects"] = json::array();
    for (const auto& o : s.objects) {
        j["objects"].push_back({{"id", o.id},
                                {"start", {o.start.x, o.start.y}},
                                {"radius", o.radius},
                                {"goal", {o.goal.x, o.goal.y}}});
    }

    j["robot"] = {{"start", {s.robot_start.x, s.robot_start.y}},
                  {"psi", s.robot_psi},
                  {"radius", s.robot_radius},
                  {"lidar_range", s.lidar_range}};

    json jp;
    jp["k"] = s.params.k;
    if (s.params.eps) jp["eps"] = *s.params.eps;
    jp["delta"] = s.params.delta;
    jp["h"] = s.params.h;
    jp["rays"] = s.params.rays;
    if (s.params.nest) jp["nest"] = {s.params.nest->x, s.params.nest->y};
    jp["max_steps"] = s.params.max_steps;
    jp["holonomic"] = s.params.holonomic;
    j["params"] = jp;

    return j.dump(2) + "\n";
}

}  // namespace warebot::io
