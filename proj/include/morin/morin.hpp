#ifndef MORIN_MORIN_HPP
#define MORIN_MORIN_HPP

#include <morin/classify.hpp>
#include <morin/errors.hpp>
#include <morin/forms.hpp>
#include <morin/germ.hpp>
#include <morin/isotopy.hpp>
#include <morin/jet.hpp>
#include <morin/jet_linalg.hpp>
#include <morin/map_jet.hpp>
#include <morin/matrix.hpp>
#include <morin/parse.hpp>
#include <morin/rat.hpp>
#include <morin/report.hpp>
#include <morin/ruling.hpp>

#endif
