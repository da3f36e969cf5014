# coamoeba_engine
