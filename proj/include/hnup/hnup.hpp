#pragma once

#include "hnup/assembly.hpp"
#include "hnup/cantor.hpp"
#include "hnup/capacity.hpp"
#include "hnup/commands.hpp"
#include "hnup/config.hpp"
#include "hnup/dimension.hpp"
#include "hnup/errors.hpp"
#include "hnup/perfectness.hpp"
#include "hnup/porosity.hpp"
#include "hnup/random_stream.hpp"
#include "hnup/ratio_spec.hpp"
#include "hnup/rational.hpp"
#include "hnup/report.hpp"
#include "hnup/shapes.hpp"
#include "hnup/table1.hpp"
