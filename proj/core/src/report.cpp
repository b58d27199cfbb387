#include "loopgas/report.hpp"

#include <sstream>

#include <json.hpp>

namespace loopgas {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

std::string render_delimited(const std::vector<CheckRecord>& records) {
    std::ostringstream os;
    os << "check\tref\tsource\testimate\ttarget\tstderr\tpass\tdetails\n";
    for (const CheckRecord& r : records)
        os << r.check << '\t' << r.ref << '\t' << r.source << '\t' << fmt(r.estimate)
           << '\t' << fmt(r.target) << '\t' << fmt(r.std_error) << '\t'
           << (r.pass ? "pass" : "fail") << '\t' << r.details << '\n';
    return os.str();
}

std::string render_jsonl(const std::vector<CheckRecord>& records) {
    std::ostringstream os;
    for (const CheckRecord& r : records) {
        nlohmann::json j{{"check", r.check},     {"ref", r.ref},
                         {"source", r.source},   {"estimate", r.estimate},
                         {"target", r.target},   {"stderr", r.std_error},
                         {"pass", r.pass},       {"details", r.details}};
        os << j.dump() << '\n';
    }
    return os.str();
}

}  // namespace loopgas
