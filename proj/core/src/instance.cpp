#include "exsum/instance.hpp"

#include "json.hpp"

namespace exsum {

using nlohmann::ordered_json;

namespace {

mpq_class parse_rational(const std::string& s) {
    mpq_class q(s);
    q.canonicalize();
    return q;
}

std::string rational_string(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

InstanceSpec parse_instance(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw validation_error(std::string("invalid instance JSON: ") + e.what());
    }
    try {
        InstanceSpec spec;
        spec.p = j.at("p").get<int64_t>();
        spec.a = j.value("a", int64_t(1));
        for (const auto& pj : j.at("poles")) {
            PoleSpec pole;
            const auto& at = pj.at("at");
            if (at.is_string() && at.get<std::string>() == "inf")
                pole.at_infinity = true;
            else if (at.is_array())
                pole.location = at.get<std::vector<int64_t>>();
            else
                throw validation_error("pole location must be \"inf\" or an array");
            for (const auto& cj : pj.at("coeffs"))
                pole.coeffs.push_back(cj.get<std::vector<int64_t>>());
            spec.poles.push_back(std::move(pole));
        }
        if (j.contains("options")) {
            const auto& o = j["options"];
            spec.options.dwork = o.value("dwork", false);
            spec.options.zeta = o.value("zeta", false);
            spec.options.paranoid = o.value("paranoid", false);
            spec.options.precision = o.value("precision", int64_t(0));
            spec.options.cap = o.value("cap", Field::kDefaultEnumerationCap);
        }
        if (j.contains("expect") && j["expect"].contains("newton")) {
            for (const auto& vj : j["expect"]["newton"]) {
                PolygonPoint pt;
                pt.x = vj.at(0).get<int64_t>();
                pt.y = parse_rational(vj.at(1).get<std::string>());
                spec.expected_newton.push_back(pt);
            }
        }
        return spec;
    } catch (const validation_error&) {
        throw;
    } catch (const std::exception& e) {
        throw validation_error(std::string("malformed instance: ") + e.what());
    }
}

void apply_overrides(InstanceSpec& spec, const OptionOverrides& o) {
    if (o.dwork) spec.options.dwork = *o.dwork;
    if (o.zeta) spec.options.zeta = *o.zeta;
    if (o.paranoid) spec.options.paranoid = *o.paranoid;
    if (o.precision) spec.options.precision = *o.precision;
    if (o.cap) spec.options.cap = *o.cap;
}

RationalFunction build_function(const InstanceSpec& spec) {
    if (!is_prime(spec.p)) throw validation_error("p must be prime");
    if (spec.a < 1) throw validation_error("a must be positive");
    auto base = Field::make(spec.p, spec.a);
    std::vector<PoleBlock> blocks;
    for (const auto& pole : spec.poles) {
        PoleBlock blk;
        if (!pole.at_infinity) blk.location = base->element(pole.location);
        for (const auto& c : pole.coeffs) blk.coeffs.push_back(base->element(c));
        blocks.push_back(std::move(blk));
    }
    return RationalFunction::validate(base, std::move(blocks));
}

std::string instance_to_json(const InstanceSpec& spec) {
    ordered_json j;
    j["p"] = spec.p;
    j["a"] = spec.a;
    j["poles"] = ordered_json::array();
    for (const auto& pole : spec.poles) {
        ordered_json pj;
        if (pole.at_infinity)
            pj["at"] = "inf";
        else
            pj["at"] = pole.location;
        pj["coeffs"] = pole.coeffs;
        j["poles"].push_back(pj);
    }
    ordered_json o;
    o["dwork"] = spec.options.dwork;
    o["zeta"] = spec.options.zeta;
    o["paranoid"] = spec.options.paranoid;
    if (spec.options.precision) o["precision"] = spec.options.precision;
    o["cap"] = spec.options.cap;
    j["options"] = o;
    if (!spec.expected_newton.empty()) {
        ordered_json e = ordered_json::array();
        for (const auto& pt : spec.expected_newton)
            e.push_back({pt.x, rational_string(pt.y)});
        j["expect"]["newton"] = e;
    }
    return j.dump(2);
}

}  // namespace exsum
