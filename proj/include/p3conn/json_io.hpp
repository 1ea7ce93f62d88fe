// JSON/CSV serialization helpers. Complex numbers serialize as {"re":., "im":.}.
#ifndef P3CONN_JSON_IO_HPP
#define P3CONN_JSON_IO_HPP

#include <json.hpp>

#include "monodromy.hpp"
#include "ode.hpp"
#include "tau.hpp"
#include "types.hpp"

namespace p3conn {

using json = nlohmann::ordered_json;

inline json to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json to_json(const TauRatioResult& r) {
    const char* name = r.method == TauMethod::quadrature ? "quadrature"
                       : r.method == TauMethod::action   ? "action"
                                                         : "closed_form";
    return json{{"method", name},
                {"log_ratio", to_json(r.log_ratio)},
                {"error_estimate", r.error_estimate}};
}

inline json to_json(const ValidityReport& rep) {
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"margin", c.margin}});
    return json{{"all_pass", rep.all_pass()}, {"checks", checks}};
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
    os << "x,re_u,im_u,re_ux,im_ux\n";
    os.precision(17);
    for (const auto& s : t.samples)
        os << s.x << ',' << s.u.real() << ',' << s.u.imag() << ',' << s.ux.real()
           << ',' << s.ux.imag() << '\n';
}

}  // namespace p3conn

#endif
