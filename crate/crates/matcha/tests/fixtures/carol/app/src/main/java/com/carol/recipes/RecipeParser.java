package com.carol.recipes;

import java.util.ArrayList;
import java.util.List;
import org.json.JSONArray;
import org.json.JSONException;
import org.json.JSONObject;

final class RecipeParser {
    private RecipeParser() {
    }

    static List<Recipe> parse(String body) {
        List<Recipe> out = new ArrayList<>();
        try {
            JSONArray items = new JSONArray(body);
            for (int i = 0; i < items.length(); i++) {
                JSONObject o = items.getJSONObject(i);
                out.add(new Recipe(o.getString("title"), o.optInt("minutes", 0)));
            }
        } catch (JSONException e) {
            // a malformed page shows no results
        }
        return out;
    }
}
