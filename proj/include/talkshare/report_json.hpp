// JSON (de)serialization of DynamicsReport:
// {id, imbalance:{value,primary,secondary}, windows:[{start,end,label,
//  dominant,fraction}], composition, stereotype, flips, mixed, config}.
#pragma once

#include <string>

#include "talkshare/dynamics.hpp"

namespace talkshare {

std::string report_to_json(const DynamicsReport& report);
DynamicsReport report_from_json(const std::string& text);

}  // namespace talkshare
