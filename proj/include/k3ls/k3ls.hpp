#pragma once

#include "k3ls/classifier.hpp"
#include "k3ls/degeneration.hpp"
#include "k3ls/model.hpp"
#include "k3ls/numerics.hpp"
#include "k3ls/oracle.hpp"
#include "k3ls/serialize.hpp"
