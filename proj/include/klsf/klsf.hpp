#pragma once

#include "klsf/errors.hpp"
#include "klsf/modular.hpp"
#include "klsf/params.hpp"
#include "klsf/zp_set.hpp"
#include "klsf/vec_set.hpp"
#include "klsf/constructions.hpp"
#include "klsf/classifier.hpp"
#include "klsf/search.hpp"
#include "klsf/covering.hpp"
#include "klsf/spectral.hpp"
#include "klsf/report.hpp"
#include "klsf/acceptance.hpp"
