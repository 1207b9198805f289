#pragma once

#include "unitri/error.hpp"
#include "unitri/multilinear_poly.hpp"
#include "unitri/scalar_rings.hpp"
#include "unitri/unitriangular.hpp"
#include "unitri/free_words.hpp"
#include "unitri/symbolic_oracle.hpp"
#include "unitri/constructions.hpp"
#include "unitri/group_explorer.hpp"
#include "unitri/serialization.hpp"
