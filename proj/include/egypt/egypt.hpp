#pragma once

#include <egypt/exactnum.hpp>
#include <egypt/repr.hpp>
#include <egypt/records.hpp>
#include <egypt/enumerate.hpp>
#include <egypt/operators.hpp>
#include <egypt/shiu.hpp>
