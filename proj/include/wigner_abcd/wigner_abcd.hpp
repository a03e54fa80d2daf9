#pragma once

#include "errors.hpp"
#include "exp_form.hpp"
#include "laser_cavity.hpp"
#include "mat2.hpp"
#include "multilayer.hpp"
#include "optical_activity.hpp"
#include "sl2.hpp"
