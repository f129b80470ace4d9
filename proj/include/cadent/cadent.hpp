#pragma once

#include "cadent/directional.hpp"
#include "cadent/entropy.hpp"
#include "cadent/literal.hpp"
#include "cadent/modmatrix.hpp"
#include "cadent/rational.hpp"
#include "cadent/rules.hpp"
#include "cadent/spacetime.hpp"
#include "cadent/verify.hpp"
