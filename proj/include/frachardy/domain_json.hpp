#ifndef FRACHARDY_DOMAIN_JSON_HPP
#define FRACHARDY_DOMAIN_JSON_HPP

#include "frachardy/domain.hpp"

#include <json.hpp>

namespace frachardy {

// JSON layout documented in docs/domain_schema.md; "type" discriminates the
// variant, coordinate arrays fix the dimension.
nlohmann::json domain_to_json(const Domain& dom);
Domain domain_from_json(const nlohmann::json& j);

} // namespace frachardy

#endif
